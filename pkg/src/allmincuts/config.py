"""Pipeline configuration: variants of the reduction ladder and run knobs."""
from __future__ import annotations

from dataclasses import dataclass, field

STRATEGIES = ("random", "central", "heavy", "weightedheavy")
LOCAL_RULES = ("heavy_edge", "imbalanced_vertex", "imbalanced_triangle", "heavy_neighborhood")


@dataclass(frozen=True)
class Variant:
    name: str
    connectivity: bool = False
    local: bool = False
    degree_one: bool = False
    kernel_in_recursion: bool = False
    degree_one_in_recursion: bool = False
    degree_two: bool = False

    @property
    def kernelizes(self) -> bool:
        return self.connectivity or self.local or self.degree_one


# each variant adds one step on top of the previous one
VARIANTS: dict[str, Variant] = {
    "basic": Variant("basic"),
    "connectivity": Variant("connectivity", connectivity=True),
    "local": Variant("local", connectivity=True, local=True),
    "degreeone": Variant("degreeone", connectivity=True, local=True, degree_one=True),
    "clin": Variant("clin", connectivity=True, local=True, degree_one=True,
                    kernel_in_recursion=True),
    "d1in": Variant("d1in", connectivity=True, local=True, degree_one=True,
                    kernel_in_recursion=True, degree_one_in_recursion=True),
    "full": Variant("full", connectivity=True, local=True, degree_one=True,
                    kernel_in_recursion=True, degree_one_in_recursion=True, degree_two=True),
}


@dataclass
class PipelineConfig:
    strategy: str = "heavy"
    seed: int = 0
    threads: int = 1
    variant: str = "full"
    threshold: float = 0.01
    recursion_kernel_every: int = 10
    estimate_rounds: int = 3
    local_rules: tuple[str, ...] = LOCAL_RULES
    # overrides a variant's flags, e.g. {"degree_two": False}
    overrides: dict[str, bool] = field(default_factory=dict)

    def __post_init__(self):
        if self.strategy not in STRATEGIES:
            raise ValueError(f"unknown strategy {self.strategy!r}")
        if self.variant not in VARIANTS:
            raise ValueError(f"unknown variant {self.variant!r}")
        if self.threads < 1:
            raise ValueError("thread count must be positive")
        if not 0 <= self.threshold < 1:
            raise ValueError("threshold must lie in [0, 1)")
        bad = set(self.local_rules) - set(LOCAL_RULES)
        if bad:
            raise ValueError(f"unknown local rules {sorted(bad)}")

    @property
    def flags(self) -> Variant:
        base = VARIANTS[self.variant]
        if not self.overrides:
            return base
        values = {k: getattr(base, k) for k in base.__dataclass_fields__}
        values.update(self.overrides)
        return Variant(**values)
