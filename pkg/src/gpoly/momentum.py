"""Bilinear forms in external momenta with polynomial coefficients.

A form is a sum of ``c * (p_a . p_b)`` (symmetric, squares when a == b) and
``c * (p_a ^ p_b)`` terms, where ``p_a ^ p_b`` stands for ``p_a Theta p_b``.
Wedge keys are stored with a < b only; swapping the labels negates.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Iterable, Mapping, Union

from .polyring import ONE, ZERO, MPoly, natural_key

Linear = Mapping[str, Union[int, Fraction, MPoly]]

DOT = "dot"
WEDGE = "wedge"


def _key(kind: str, a: str, b: str):
    """Canonical key and sign for an atom, or (None, 0) when it vanishes."""
    ka, kb = natural_key(a), natural_key(b)
    if kind == DOT:
        return ((DOT, a, b) if ka <= kb else (DOT, b, a)), 1
    if a == b:
        return None, 0
    return ((WEDGE, a, b), 1) if ka < kb else ((WEDGE, b, a), -1)


class MomentumForm:
    __slots__ = ("_t",)

    def __init__(self, terms: Mapping[tuple, MPoly] | None = None):
        self._t: dict[tuple, MPoly] = {}
        for (kind, a, b), c in (terms or {}).items():
            self._add(kind, a, b, MPoly.coerce(c))

    def _add(self, kind, a, b, c: MPoly):
        key, sign = _key(kind, a, b)
        if key is None or c.is_zero():
            return
        new = self._t.get(key, ZERO) + (c if sign > 0 else -c)
        if new.is_zero():
            self._t.pop(key, None)
        else:
            self._t[key] = new

    @classmethod
    def zero(cls) -> "MomentumForm":
        return cls()

    @classmethod
    def atom(cls, kind: str, a: str, b: str, coeff=ONE) -> "MomentumForm":
        f = cls()
        f._add(kind, a, b, MPoly.coerce(coeff))
        return f

    @classmethod
    def bilinear(cls, left: Linear, right: Linear, coeff=ONE, kind: str = DOT) -> "MomentumForm":
        """Expand coeff * (sum_a l_a p_a) <kind> (sum_b r_b p_b)."""
        f = cls()
        coeff = MPoly.coerce(coeff)
        for a, ca in left.items():
            for b, cb in right.items():
                f._add(kind, a, b, coeff * ca * cb)
        return f

    @classmethod
    def square(cls, lin: Linear, coeff=ONE) -> "MomentumForm":
        return cls.bilinear(lin, lin, coeff, DOT)

    # -- algebra -------------------------------------------------------------
    def __add__(self, other: "MomentumForm") -> "MomentumForm":
        f = MomentumForm()
        f._t = dict(self._t)
        for (k, a, b), c in other._t.items():
            f._add(k, a, b, c)
        return f

    def __neg__(self) -> "MomentumForm":
        f = MomentumForm()
        f._t = {k: -c for k, c in self._t.items()}
        return f

    def __sub__(self, other: "MomentumForm") -> "MomentumForm":
        return self + (-other)

    def __mul__(self, c) -> "MomentumForm":
        c = MPoly.coerce(c)
        f = MomentumForm()
        for (k, a, b), v in self._t.items():
            f._add(k, a, b, v * c)
        return f

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, MomentumForm):
            return NotImplemented
        return self._t == other._t

    def __hash__(self):
        return hash(frozenset(self._t.items()))

    def is_zero(self) -> bool:
        return not self._t

    def items(self):
        return sorted(self._t.items(), key=lambda kv: (kv[0][0], natural_key(kv[0][1]),
                                                        natural_key(kv[0][2])))

    def part(self, kind: str) -> "MomentumForm":
        f = MomentumForm()
        f._t = {k: v for k, v in self._t.items() if k[0] == kind}
        return f

    def coefficient(self, kind: str, a: str, b: str) -> MPoly:
        key, sign = _key(kind, a, b)
        if key is None:
            return ZERO
        c = self._t.get(key, ZERO)
        return c if sign > 0 else -c

    def labels(self) -> set[str]:
        out = set()
        for _, a, b in self._t:
            out.update((a, b))
        return out

    def map_coeffs(self, fn) -> "MomentumForm":
        f = MomentumForm()
        for (k, a, b), c in self._t.items():
            f._add(k, a, b, fn(c))
        return f

    # -- momentum substitutions -----------------------------------------------
    def substitute(self, mapping: Mapping[str, Linear]) -> "MomentumForm":
        """Replace momentum labels by linear combinations of other labels."""
        f = MomentumForm()
        for (k, a, b), c in self._t.items():
            la = mapping.get(a, {a: 1})
            lb = mapping.get(b, {b: 1})
            f = f + MomentumForm.bilinear(la, lb, c, k)
        return f

    def conserve(self, labels: Iterable[str], eliminate: str | None = None) -> "MomentumForm":
        """Impose sum(labels) = 0 by eliminating one label (default: the largest)."""
        labels = sorted(set(labels), key=natural_key)
        if not labels:
            return self
        if eliminate is None:
            eliminate = labels[-1]
        others = {l: -1 for l in labels if l != eliminate}
        return self.substitute({eliminate: others})

    # -- rendering -------------------------------------------------------------
    def render(self, fmt: str = "text") -> str:
        if fmt == "json":
            return json.dumps({"terms": [{"kind": k, "a": a, "b": b, "coeff": c.to_json()}
                                         for (k, a, b), c in self.items()]},
                              separators=(",", ":"))
        if not self._t:
            return "0"
        parts = []
        for (k, a, b), c in self.items():
            if fmt == "latex":
                atom = f"p_{{{a}}}\\cdot p_{{{b}}}" if k == DOT else f"p_{{{a}}}\\Theta p_{{{b}}}"
                parts.append(f"\\left({c.render('latex')}\\right){atom}")
            else:
                parts.append(f"({c.render('text')})*{k}({a},{b})")
        return " + ".join(parts)

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"MomentumForm({self.render()!r})"


def conservation_rule(flags) -> dict[str, dict[str, Fraction]]:
    """Substitution imposing sum of all flag momenta = 0.

    The eliminated symbol is the one carried by the highest-id flag that
    appears in the relation; empty when the relation holds identically.
    """
    rel: dict[str, Fraction] = {}
    for f in flags:
        for s, c in f.momentum_linear().items():
            rel[s] = rel.get(s, 0) + c
    rel = {s: c for s, c in rel.items() if c}
    if not rel:
        return {}
    for f in sorted(flags, key=lambda f: natural_key(f.id), reverse=True):
        (s, _), = f.momentum_linear().items()
        if s in rel:
            c = Fraction(rel[s])
            return {s: {t: -Fraction(ct) / c for t, ct in rel.items() if t != s}}
    return {}


def conserve_flags(form: MomentumForm, flags) -> MomentumForm:
    rule = conservation_rule(flags)
    return form.substitute(rule) if rule else form


def total_momentum(flags) -> dict[str, int]:
    out: dict[str, int] = {}
    for f in flags:
        for s, c in f.momentum_linear().items():
            out[s] = out.get(s, 0) + c
    return {s: c for s, c in out.items() if c}
