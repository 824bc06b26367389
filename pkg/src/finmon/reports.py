"""Report records shared by the equality engine, the law suite, the
dynamical-system checks and the DP checks."""

from __future__ import annotations

from dataclasses import dataclass, field

from .values import Value


@dataclass(frozen=True, slots=True)
class EqReport:
    """Verdict of a pointwise function-equality check.

    equal is true iff witness is absent. A witness is the least differing
    input in canonical order: (input, left output, right output). For
    leveled checks the input is a Seq of the inputs along the path to the
    disagreement, outermost first.
    """

    equal: bool
    witness: tuple[Value, Value, Value] | None
    checked: int


@dataclass(frozen=True, slots=True)
class QuantifierStat:
    """How one bound variable was visited."""

    var: str
    space: str
    size: int
    mode: str  # "exhaustive" or "sampled"
    count: int


@dataclass(slots=True)
class LawReport:
    """Outcome of checking one named property for one instance.

    passed is true iff witness is absent. When every quantifier ran
    exhaustively the witness is the least counterexample in the
    lexicographic enumeration order of the bound-variable tuple. The
    witness maps variable names to canonically rendered values and always
    carries "lhs"/"rhs" renderings of the two disagreeing sides. elapsed_ms
    is wall-clock and is kept out of deterministic report sections.
    """

    law_id: str
    instance: str
    sizes: dict[str, int] = field(default_factory=dict)
    quantifiers: list[QuantifierStat] = field(default_factory=list)
    passed: bool = True
    checked: int = 0
    witness: dict[str, str] | None = None
    diagnostic: str | None = None
    detail: str = ""
    elapsed_ms: float = 0.0

    def to_deterministic_dict(self) -> dict:
        out = {
            "law": self.law_id,
            "instance": self.instance,
            "sizes": dict(sorted(self.sizes.items())),
            "quantifiers": [
                {
                    "var": s.var,
                    "space": s.space,
                    "size": s.size,
                    "mode": s.mode,
                    "count": s.count,
                }
                for s in self.quantifiers
            ],
            "pass": self.passed,
            "checked": self.checked,
        }
        if self.witness is not None:
            out["witness"] = dict(self.witness)
        if self.diagnostic is not None:
            out["diagnostic"] = self.diagnostic
        if self.detail:
            out["detail"] = self.detail
        return out
