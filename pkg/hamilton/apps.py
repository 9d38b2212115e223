from django.apps import AppConfig


class HamiltonConfig(AppConfig):
    name = "hamilton"
    verbose_name = "Rotation-Extension Engine"
