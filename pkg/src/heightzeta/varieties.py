"""Polynomial systems cutting out (locally) closed subschemes of P^n.

A variety spec holds homogeneous polynomials with integer coefficients in
``n+1`` variables.  Each polynomial is a sum of terms ``c * x^e`` given by
an integer coefficient and an exponent vector.  An optional list of
excluded closed subschemes turns the support into a locally closed set
``X \\ (Y_1 u Y_2 u ...)``: a point is dropped when every polynomial of
some excluded system vanishes on it.
"""

from __future__ import annotations

from dataclasses import dataclass, field

__all__ = ["Term", "Poly", "VarietySpec", "projective_space", "poly"]


@dataclass(frozen=True)
class Term:
    coef: int
    exps: tuple[int, ...]

    @property
    def degree(self) -> int:
        return sum(self.exps)


@dataclass(frozen=True)
class Poly:
    """A homogeneous integer polynomial in n+1 homogeneous variables."""

    terms: tuple[Term, ...]

    def __post_init__(self):
        terms = tuple(t for t in self.terms if t.coef != 0)
        if not terms:
            raise ValueError("a polynomial needs at least one nonzero term")
        width = len(terms[0].exps)
        if any(len(t.exps) != width for t in terms):
            raise ValueError("inconsistent number of variables across terms")
        if any(e < 0 for t in terms for e in t.exps):
            raise ValueError("exponents must be nonnegative")
        deg = terms[0].degree
        if any(t.degree != deg for t in terms):
            raise ValueError("polynomial is not homogeneous")
        object.__setattr__(self, "terms", terms)

    @property
    def nvars(self) -> int:
        return len(self.terms[0].exps)

    @property
    def degree(self) -> int:
        return self.terms[0].degree

    def max_var(self) -> int:
        """Largest variable index that actually occurs (-1 for constants)."""
        idx = -1
        for t in self.terms:
            for j, e in enumerate(t.exps):
                if e > 0:
                    idx = max(idx, j)
        return idx

    def degree_in(self, j: int) -> int:
        return max(t.exps[j] for t in self.terms)

    def eval(self, coords) -> int:
        """Exact value at an integer coordinate vector."""
        total = 0
        for t in self.terms:
            v = t.coef
            for x, e in zip(coords, t.exps):
                if e:
                    v *= x**e
            total += v
        return total

    def eval_bound(self, B: int) -> int:
        """Upper bound for ``|eval|`` over the box ``|x_i| <= B``."""
        return sum(abs(t.coef) * B**t.degree for t in self.terms)

    def to_json(self) -> dict:
        return {"terms": [{"c": t.coef, "e": list(t.exps)} for t in self.terms]}

    @classmethod
    def from_json(cls, data: dict) -> "Poly":
        try:
            terms = tuple(Term(int(t["c"]), tuple(int(e) for e in t["e"])) for t in data["terms"])
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed polynomial spec: {data!r}") from exc
        return cls(terms)


def poly(*term_pairs) -> Poly:
    """Convenience constructor: ``poly((c, (e0, e1, ...)), ...)``."""
    return Poly(tuple(Term(c, tuple(e)) for c, e in term_pairs))


@dataclass(frozen=True)
class VarietySpec:
    """A (locally) closed subscheme of P^n given by polynomial systems."""

    n: int
    polys: tuple[Poly, ...] = ()
    excluded: tuple[tuple[Poly, ...], ...] = ()

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"ambient dimension must be >= 1, got {self.n}")
        width = self.n + 1
        for p in self.polys:
            if p.nvars != width:
                raise ValueError(
                    f"polynomial in {p.nvars} variables does not fit P^{self.n}"
                )
        for sys in self.excluded:
            if not sys:
                raise ValueError("an excluded subscheme needs at least one polynomial")
            for p in sys:
                if p.nvars != width:
                    raise ValueError(
                        f"excluded polynomial in {p.nvars} variables does not fit P^{self.n}"
                    )

    @property
    def is_full_space(self) -> bool:
        return not self.polys and not self.excluded

    def contains(self, coords) -> bool:
        """Exact membership test for integer homogeneous coordinates."""
        if any(p.eval(coords) != 0 for p in self.polys):
            return False
        for sys in self.excluded:
            if all(p.eval(coords) == 0 for p in sys):
                return False
        return True

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "polys": [p.to_json() for p in self.polys],
            "excluded": [[p.to_json() for p in sys] for sys in self.excluded],
        }

    @classmethod
    def from_json(cls, data: dict) -> "VarietySpec":
        if "n" not in data:
            raise ValueError("variety spec is missing the ambient dimension 'n'")
        polys = tuple(Poly.from_json(p) for p in data.get("polys", ()))
        excluded = tuple(
            tuple(Poly.from_json(p) for p in sys) for sys in data.get("excluded", ())
        )
        return cls(int(data["n"]), polys, excluded)


def projective_space(n: int) -> VarietySpec:
    """The full P^n (no defining equations)."""
    return VarietySpec(n)
