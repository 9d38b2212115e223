from django.apps import AppConfig


class ReductionConfig(AppConfig):
    name = "reduction"
    verbose_name = "2-Core Reduction"
