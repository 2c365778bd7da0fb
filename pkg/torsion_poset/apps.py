from django.apps import AppConfig


class TorsionPosetConfig(AppConfig):
    name = "torsion_poset"
    verbose_name = "Poset of torsions"
