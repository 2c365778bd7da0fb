from django.apps import AppConfig


class FaceringConfig(AppConfig):
    name = "facering"
    verbose_name = "Face rings"
