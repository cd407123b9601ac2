"""Monomial orders.

Every order exposes ``key(exp)``: a tuple whose natural comparison agrees
with the order (larger key = larger monomial).  Module terms use
term-over-position with the lower position index ranking higher.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class MonomialOrder:
    kind: str = "grevlex"
    weights: tuple = ()

    def __post_init__(self):
        if self.kind not in ("grevlex", "lex", "weighted-grevlex"):
            raise ValueError(f"unknown monomial order {self.kind!r}")
        if self.kind == "weighted-grevlex":
            w = tuple(self.weights)
            if not w or any(x < 0 for x in w):
                raise ValueError("weights must be non-negative")
            object.__setattr__(self, "weights", w)

    def key(self, exp) -> tuple:
        if self.kind == "grevlex":
            return (sum(exp),) + tuple(-e for e in reversed(exp))
        if self.kind == "lex":
            return tuple(exp)
        w = sum(a * b for a, b in zip(self.weights, exp))
        return (w, sum(exp)) + tuple(-e for e in reversed(exp))

    def module_key(self, pos: int, exp) -> tuple:
        return self.key(exp) + (-pos,)

    def compare(self, a, b) -> int:
        ka, kb = self.key(a), self.key(b)
        return (ka > kb) - (ka < kb)


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")


def elimination_order(nvars: int, eliminate) -> MonomialOrder:
    """Weighted grevlex giving weight 1 to the variables in ``eliminate``.

    Any term containing an eliminated variable outranks every term free of
    them, so a Groebner basis restricts to one of the elimination ideal.
    """
    eliminate = set(eliminate)
    return MonomialOrder("weighted-grevlex", tuple(1 if i in eliminate else 0 for i in range(nvars)))
