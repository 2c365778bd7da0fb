from django.apps import AppConfig


class PolyConfig(AppConfig):
    name = "poly"
    verbose_name = "Polynomials and Hilbert series"
