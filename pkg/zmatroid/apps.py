from django.apps import AppConfig


class ZmatroidConfig(AppConfig):
    name = "zmatroid"
    verbose_name = "Realized Z-matroids"
