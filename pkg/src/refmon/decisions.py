"""Three-valued verdicts and search bounds.

Every bounded search in this package returns a Decision rather than a bare
boolean: the congruence classes involved are typically infinite, so "not
found within the bound" must stay distinct from "provably absent".
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

HOLDS = "holds"
FAILS = "fails"
UNKNOWN = "unknown"


@dataclass(frozen=True)
class SearchBound:
    """Caps for bounded enumeration.

    max_degree caps the total degree of any word considered (including
    intermediate words on rewrite paths); max_class_size caps congruence-class
    enumeration; max_coefficient caps multipliers and searched coefficients.
    """

    max_degree: int = 6
    max_class_size: int = 20000
    max_coefficient: int = 5

    def __post_init__(self) -> None:
        if self.max_degree < 0:
            raise ValueError("max_degree must be >= 0")
        if self.max_class_size < 1 or self.max_coefficient < 1:
            raise ValueError("max_class_size and max_coefficient must be >= 1")

    def as_dict(self) -> dict:
        return {
            "max_degree": self.max_degree,
            "max_class_size": self.max_class_size,
            "max_coefficient": self.max_coefficient,
        }


@dataclass(frozen=True)
class Decision:
    """Holds(witness) / Fails(counterexample) / Unknown(bound).

    Holds and Fails always carry a machine-checkable witness respectively
    counterexample; Unknown records the bound that was exhausted.
    """

    verdict: str
    witness: Any = None
    counterexample: Any = None
    bound: SearchBound | None = None
    note: str = ""

    @staticmethod
    def holds(witness: Any = None, note: str = "") -> "Decision":
        return Decision(HOLDS, witness=witness, note=note)

    @staticmethod
    def fails(counterexample: Any = None, note: str = "") -> "Decision":
        return Decision(FAILS, counterexample=counterexample, note=note)

    @staticmethod
    def unknown(bound: SearchBound | None = None, note: str = "") -> "Decision":
        return Decision(UNKNOWN, bound=bound, note=note)

    @property
    def is_holds(self) -> bool:
        return self.verdict == HOLDS

    @property
    def is_fails(self) -> bool:
        return self.verdict == FAILS

    @property
    def is_unknown(self) -> bool:
        return self.verdict == UNKNOWN

    def __bool__(self) -> bool:
        # deliberate: forces callers to test .is_holds / .is_fails explicitly
        raise TypeError("Decision is three-valued; test .is_holds / .is_fails")
