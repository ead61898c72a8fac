from typing import List

from pcomplex.config_registrar import Config, register_config


@register_config()
class TestExtensionConfig(Config):
    def __init__(self):
        self.static_var: str = None
        self.group_families: List[GroupFamilyConfig] = None


@register_config()
class GroupFamilyConfig(Config):
    def __init__(self):
        self.name: str = None
        self.degrees: List[int] = None
        self.prime_hint: PrimeHintConfig = None


@register_config()
class PrimeHintConfig(Config):
    def __init__(self):
        self.prime: int = None
        self.reason: str = None
