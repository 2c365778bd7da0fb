from django.apps import AppConfig


class IntlinConfig(AppConfig):
    name = "intlin"
    verbose_name = "Exact integer lattices"
