"""Tensor products of Clifford-type algebras as flat coefficient maps."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence

from .clifford import CliffordAlgebra, CliffordElement, parse_label
from .errors import AlgebraMismatch


def _strip(F, coeffs: Mapping) -> dict:
    return {k: v for k, v in coeffs.items() if not F.is_zero(v)}


def _accumulate(F, acc: dict, key, val) -> None:
    v = F.add(acc.get(key, F.zero()), val)
    if F.is_zero(v):
        acc.pop(key, None)
    else:
        acc[key] = v


@dataclass(frozen=True, eq=False)
class TensorElement:
    """Element of ``S_1 (x) ... (x) S_k``; keys are tuples of basis indices, zeros omitted."""

    spaces: tuple
    coeffs: dict = field(default_factory=dict)

    @classmethod
    def build(cls, spaces: Sequence[CliffordAlgebra], coeffs: Mapping) -> TensorElement:
        return cls(tuple(spaces), _strip(spaces[0].field, coeffs))

    @classmethod
    def pure(cls, *elems: CliffordElement) -> TensorElement:
        spaces = tuple(e.algebra for e in elems)
        F = spaces[0].field
        terms: dict = {(): F.one()}
        for e in elems:
            nxt: dict = {}
            nz = [(i, c) for i, c in enumerate(e.vec) if not F.is_zero(c)]
            for key, c in terms.items():
                for i, ci in nz:
                    _accumulate(F, nxt, key + (i,), F.mul(c, ci))
            terms = nxt
        return cls(spaces, terms)

    @classmethod
    def zero(cls, spaces: Sequence[CliffordAlgebra]) -> TensorElement:
        return cls(tuple(spaces), {})

    @property
    def field(self):
        return self.spaces[0].field

    def __eq__(self, o):
        return isinstance(o, TensorElement) and self.spaces == o.spaces and self.coeffs == o.coeffs

    def __hash__(self):
        return hash((self.spaces, tuple(sorted(self.coeffs.items()))))

    def _check(self, o: TensorElement):
        if o.spaces != self.spaces:
            raise AlgebraMismatch("tensor factors differ")

    def __add__(self, o: TensorElement) -> TensorElement:
        self._check(o)
        F = self.field
        acc = dict(self.coeffs)
        for k, v in o.coeffs.items():
            _accumulate(F, acc, k, v)
        return TensorElement(self.spaces, acc)

    def __neg__(self) -> TensorElement:
        F = self.field
        return TensorElement(self.spaces, {k: F.neg(v) for k, v in self.coeffs.items()})

    def __sub__(self, o: TensorElement) -> TensorElement:
        return self + (-o)

    def scale(self, c) -> TensorElement:
        F = self.field
        c = F.coerce(c)
        return TensorElement.build(self.spaces, {k: F.mul(c, v) for k, v in self.coeffs.items()})

    def __mul__(self, o: TensorElement) -> TensorElement:
        """Factorwise product ``(a (x) b)(a' (x) b') = aa' (x) bb'``."""
        self._check(o)
        F = self.field
        tables = [s.table for s in self.spaces]
        acc: dict = {}
        for k1, v1 in self.coeffs.items():
            for k2, v2 in o.coeffs.items():
                terms = [((), F.mul(v1, v2))]
                for t, a, b in zip(tables, k1, k2):
                    prod = t[a][b]
                    if not prod:
                        terms = []
                        break
                    terms = [(key + (idx,), F.mul(c, pc)) for key, c in terms for idx, pc in prod]
                for key, c in terms:
                    _accumulate(F, acc, key, c)
        return TensorElement(self.spaces, acc)

    def is_zero(self) -> bool:
        return not self.coeffs

    def map_leg(self, pos: int, fn: Callable[[int], Mapping], space: CliffordAlgebra | None = None) -> TensorElement:
        """Apply a linear map to one factor; ``fn(idx)`` returns ``{idx': coeff}``."""
        F = self.field
        spaces = list(self.spaces)
        if space is not None:
            spaces[pos] = space
        acc: dict = {}
        for key, v in self.coeffs.items():
            for idx, c in fn(key[pos]).items():
                _accumulate(F, acc, key[:pos] + (idx,) + key[pos + 1:], F.mul(v, c))
        return TensorElement(tuple(spaces), acc)

    def expand_leg(self, pos: int, fn: Callable[[int], Mapping], new_spaces: Sequence[CliffordAlgebra]) -> TensorElement:
        """Replace one factor by several; ``fn(idx)`` returns ``{(i1, i2, ..): coeff}``."""
        F = self.field
        spaces = self.spaces[:pos] + tuple(new_spaces) + self.spaces[pos + 1:]
        acc: dict = {}
        for key, v in self.coeffs.items():
            for sub, c in fn(key[pos]).items():
                _accumulate(F, acc, key[:pos] + tuple(sub) + key[pos + 1:], F.mul(v, c))
        return TensorElement(spaces, acc)

    def contract_leg(self, pos: int, fn: Callable[[int], object]) -> TensorElement:
        """Apply a linear functional to one factor (e.g. the counit)."""
        F = self.field
        spaces = self.spaces[:pos] + self.spaces[pos + 1:]
        acc: dict = {}
        for key, v in self.coeffs.items():
            c = fn(key[pos])
            if not F.is_zero(c):
                _accumulate(F, acc, key[:pos] + key[pos + 1:], F.mul(v, c))
        return TensorElement(spaces, acc)

    def to_element(self) -> CliffordElement:
        """A one-factor tensor as an ordinary element."""
        (alg,) = self.spaces
        F = alg.field
        vec = [F.zero()] * alg.dim
        for (i,), v in self.coeffs.items():
            vec[i] = v
        return CliffordElement(alg, tuple(vec))

    def multiply_out(self) -> CliffordElement:
        """``m(a (x) b (x) ..)`` for factors living in one algebra."""
        alg = self.spaces[0]
        F = alg.field
        out = alg.zero()
        for key, v in self.coeffs.items():
            term = alg.basis(key[0], v)
            for idx in key[1:]:
                term = term * alg.basis(idx)
            out = out + term
        return out

    def to_json(self) -> dict[str, str]:
        F = self.field
        out = {}
        for key in sorted(self.coeffs):
            lab = "|".join(s.label_str(i) for s, i in zip(self.spaces, key))
            out[lab] = F.fmt(self.coeffs[key])
        return out

    @classmethod
    def from_json(cls, spaces: Sequence[CliffordAlgebra], obj: Mapping[str, object]) -> TensorElement:
        F = spaces[0].field
        acc: dict = {}
        for lab, val in obj.items():
            parts = lab.split("|")
            if len(parts) != len(spaces):
                raise AlgebraMismatch(f"tensor label {lab!r} has {len(parts)} factors, expected {len(spaces)}")
            key = tuple(s.index(*parse_label(p, s.n)) for s, p in zip(spaces, parts))
            _accumulate(F, acc, key, F.coerce(val))
        return cls(tuple(spaces), acc)

    def __str__(self):
        return " + ".join(f"({c})*{k}" for k, c in self.to_json().items()) or "0"

    __repr__ = __str__
