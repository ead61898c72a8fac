from sympy import isprime

import pcomplex.settings as settings
from pcomplex.config_registrar import Config, register_config
from pcomplex.exceptions import InvalidInputError, NotAPrimeError
from pcomplex.posets import POSET_KINDS
from pcomplex.utils import provide_argument_help_string


def _require_non_negative(value, flag: str):
    if value is not None and (not isinstance(value, int) or value < 0):
        raise InvalidInputError(f"{flag} must be a non-negative integer, got {value!r}", module="cli")


@register_config()
class CapsConfig(Config):
    def __init__(self):
        for name in settings.CAP_SOURCES:
            setattr(self, name, None)

    def validate(self):
        for name, value in self.to_dict().items():
            if value is None:
                continue
            if not isinstance(value, int) or value <= 0:
                config_key, flag = settings.CAP_SOURCES.get(name, (name, name))
                raise InvalidInputError(
                    f"cap {config_key} ({flag}) must be a positive integer, got {value!r}",
                    module="cli",
                )

    def apply(self):
        """Push every cap given here into the runtime settings."""
        given = {name: value for name, value in self.to_dict().items() if value is not None}
        settings.settings["caps"].update(given)


@register_config()
class RunConfig(Config):
    def __init__(self):
        self.group = None
        self.prime = None
        self.poset = None
        self.truncate = None
        self.homology = None
        self.json = None
        self.threads = None
        self.check_invariants = None
        self.caps = CapsConfig()

    def validate(self):
        if not self.group:
            raise InvalidInputError("a group is required, pass --group SPEC", module="cli")
        if not isinstance(self.prime, int) or not isprime(self.prime):
            raise NotAPrimeError(f"{self.prime!r} is not a prime", module="cli")
        if self.poset not in POSET_KINDS:
            raise InvalidInputError(
                provide_argument_help_string(str(self.poset), POSET_KINDS), module="cli"
            )
        _require_non_negative(self.truncate, "--truncate")
        _require_non_negative(self.homology, "--homology")
        if self.threads is not None and (not isinstance(self.threads, int) or self.threads < 1):
            raise InvalidInputError(f"--threads must be at least 1, got {self.threads!r}", module="cli")
        self.caps.validate()


@register_config()
class ExpectConfig(Config):
    """Expected values for one acceptance check; unset keys are not compared."""

    def __init__(self):
        self.components = None
        self.components_min = None
        self.status = None
        self.status_prefix = None
        self.free_rank = None
        self.betti = None
        self.reduced_betti = None
        self.homology_torsion = None
        self.abelianization_rank = None
        self.torsion = None
        self.free_split_sum = None
        self.residual_nonempty = None


@register_config()
class PredictionConfig(Config):
    """A closed-form free rank to compare the computed one against."""

    def __init__(self):
        self.formula = None
        self.factors = []


@register_config()
class CheckConfig(Config):
    def __init__(self):
        self.name = None
        self.group = None
        self.prime = None
        self.poset = "quillen"
        self.truncate = None
        self.homology = None
        self.level = "default"
        self.invariance = False
        self.groups = []
        self.expect = ExpectConfig()
        self.prediction = None


@register_config()
class VerifyConfig(Config):
    def __init__(self):
        self.extended = None
        self.only = None
        self.checks = []
