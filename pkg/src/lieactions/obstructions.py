"""Minimum-dimension verdicts for effective solvable actions.

For a solvable algebra of derived length l, an effective local action
on an n-manifold forces n >= l - 1, and n >= l in the nilpotent case
(the Epstein-Thurston bound). In the borderline dimension, if the last
nonzero derived term sits inside a center of dimension > 1, every
analytic action is degenerate: its kernel contains a one-dimensional
central subalgebra. Everything here is the soundness direction only;
no existence claims are made.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import LieAlgebra
from .linalg import Subspace

__all__ = [
    "ObstructionReport",
    "ActionVerdict",
    "min_effective_action_dim",
    "borderline_analysis",
    "n_action_verdict",
    "VERDICT_IMPOSSIBLE",
    "VERDICT_DEGENERATE",
    "VERDICT_NONE",
]

VERDICT_IMPOSSIBLE = "impossible (below Epstein-Thurston bound)"
VERDICT_DEGENERATE = "degenerate (central kernel)"
VERDICT_NONE = "no verdict"


@dataclass(frozen=True)
class ObstructionReport:
    algebra: str
    solvable: bool
    nilpotent: bool
    derived_length: int | None
    nilpotency_class: int | None
    min_effective_dim: int | None  # None = not applicable (not solvable)
    last_derived_term: Subspace | None  # g^(l-1)
    center: Subspace
    last_term_central: bool
    center_dim: int
    verdicts: tuple[str, ...]

    def to_dict(self) -> dict:
        def subspace_dict(s: Subspace | None):
            if s is None:
                return None
            return {
                "dim": s.dim,
                "basis": [list(row) for row in s.basis_vectors()],
            }

        return {
            "algebra": self.algebra,
            "solvable": self.solvable,
            "nilpotent": self.nilpotent,
            "derived_length": "infinite" if self.derived_length is None else self.derived_length,
            "nilpotency_class": "infinite" if self.nilpotency_class is None else self.nilpotency_class,
            "min_effective_dim": (
                "not applicable" if self.min_effective_dim is None else self.min_effective_dim
            ),
            "last_derived_term": subspace_dict(self.last_derived_term),
            "center": subspace_dict(self.center),
            "center_dim": self.center_dim,
            "last_term_central": self.last_term_central,
            "verdicts": list(self.verdicts),
        }


@dataclass(frozen=True)
class ActionVerdict:
    algebra: str
    manifold_dim: int
    verdict: str
    detail: str


def min_effective_action_dim(g: LieAlgebra) -> int | None:
    """Lower bound for the dimension of a manifold with an effective
    action of g: l-1 for solvable, l for nilpotent, None otherwise."""
    length = g.derived_length()
    if length is None:
        return None
    if g.nilpotency_class() is not None:
        return length
    return length - 1


def borderline_analysis(g: LieAlgebra) -> ObstructionReport:
    """Center/last-term analysis in the borderline dimension.

    Requires g solvable. Emits a degeneracy verdict when the last
    nonzero derived term is central and the center has dimension > 1.
    """
    series = g.derived_series()
    length = series.length
    if length is None:
        raise ValueError(f"{g.name} is not solvable; borderline analysis does not apply")
    nilpotent = g.nilpotency_class() is not None
    center = g.center()
    last_term = series.terms[length - 1] if length >= 1 else Subspace.zero(g.dim)
    last_central = center.contains_subspace(last_term)
    borderline = length if nilpotent else length - 1
    verdicts: list[str] = []
    if last_central and center.dim > 1:
        verdicts.append(
            f"every analytic action in the borderline dimension {borderline} has "
            f"kernel containing a 1-dimensional central subalgebra; every such "
            f"action is degenerate"
        )
    elif last_central and center.dim == 1:
        verdicts.append("no central obstruction")
    return ObstructionReport(
        algebra=g.name,
        solvable=True,
        nilpotent=nilpotent,
        derived_length=length,
        nilpotency_class=g.nilpotency_class(),
        min_effective_dim=length if nilpotent else length - 1,
        last_derived_term=last_term,
        center=center,
        last_term_central=last_central,
        center_dim=center.dim,
        verdicts=tuple(verdicts),
    )


def n_action_verdict(g: LieAlgebra, n: int) -> ActionVerdict:
    """Verdict for actions of g on an n-manifold: impossibility below the
    bound, degeneracy at a central borderline, otherwise none."""
    bound = min_effective_action_dim(g)
    if bound is None:
        return ActionVerdict(
            g.name, n, VERDICT_NONE, "not solvable; the dimension bound does not apply"
        )
    if n < bound:
        return ActionVerdict(
            g.name,
            n,
            VERDICT_IMPOSSIBLE,
            f"no effective action exists: n = {n} < {bound} = minimum effective dimension",
        )
    report = borderline_analysis(g)
    borderline = report.derived_length if report.nilpotent else report.derived_length - 1
    if n == borderline and report.last_term_central and report.center_dim > 1:
        return ActionVerdict(
            g.name,
            n,
            VERDICT_DEGENERATE,
            f"last derived term lies in the {report.center_dim}-dimensional center; "
            f"every analytic {n}-action has a central 1-dimensional kernel",
        )
    return ActionVerdict(g.name, n, VERDICT_NONE, "no obstruction detected at this dimension")
