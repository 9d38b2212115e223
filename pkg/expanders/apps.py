from django.apps import AppConfig


class ExpandersConfig(AppConfig):
    name = "expanders"
    verbose_name = "Sparse Expanders"
