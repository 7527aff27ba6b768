"""Exact multivariate polynomials over the rationals.

Monomials are packed into Python integers: every registered atom owns a
16-bit field (15 exponent bits plus one guard bit), so monomial
multiplication is integer addition and divisibility is a single masked
subtraction.  Integer comparison of packed monomials is a valid (lex)
monomial order, which the exact-division routine relies on.  Rendering
never uses the packed order; it sorts by the atoms' own total order.
"""

from __future__ import annotations

import enum
import heapq
import json
import re
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Union

Coeff = Union[int, Fraction]

_FIELD = 16
_EXP_MASK = (1 << (_FIELD - 1)) - 1
_GUARD = 1 << (_FIELD - 1)


def natural_key(s) -> tuple:
    """Sort key that orders 'e2' before 'e10'."""
    if isinstance(s, int):
        return ((0, s),)
    parts = re.split(r"(\d+)", str(s))
    return tuple((0, int(p)) if p.isdigit() else (1, p) for p in parts if p != "")


class Kind(enum.IntEnum):
    X = 0
    Y = 1
    Z = 2
    Q = 3
    W = 4
    THETA = 5
    ALPHA = 6
    BETA = 7
    QV = 8
    QSET = 9
    WSET = 10
    XI = 11
    WI = 12


_SPELL = {
    Kind.X: "x", Kind.Y: "y", Kind.Z: "z", Kind.Q: "q", Kind.W: "w",
    Kind.THETA: "theta", Kind.ALPHA: "alpha", Kind.BETA: "beta", Kind.QV: "qv",
    Kind.QSET: "qs", Kind.WSET: "ws", Kind.XI: "xi", Kind.WI: "wi",
}
_LATEX = {
    Kind.X: "x", Kind.Y: "y", Kind.Z: "z", Kind.Q: "q", Kind.W: "w",
    Kind.THETA: r"\theta", Kind.ALPHA: r"\alpha", Kind.BETA: r"\beta", Kind.QV: "q",
    Kind.QSET: "q", Kind.WSET: "w", Kind.XI: r"\xi", Kind.WI: "w",
}
_BARE = {Kind.X, Kind.Y, Kind.Z, Kind.Q, Kind.W, Kind.THETA}


def least_rotation(seq: Iterable) -> tuple:
    seq = tuple(seq)
    if not seq:
        return seq
    keys = [natural_key(s) for s in seq]
    n = len(seq)
    best = min(range(n), key=lambda i: keys[i:] + keys[:i])
    return seq[best:] + seq[:best]


@dataclass(frozen=True)
class VarAtom:
    """A polynomial variable: a kind plus an optional payload."""

    kind: Kind
    payload: object = None

    def __post_init__(self):
        k, p = self.kind, self.payload
        if k in _BARE:
            if p is not None:
                raise ValueError(f"{_SPELL[k]} takes no payload")
        elif k == Kind.QSET:
            items = tuple(sorted(set(p), key=natural_key))
            if not items:
                raise ValueError("qs[] needs a nonempty flag set")
            object.__setattr__(self, "payload", items)
        elif k == Kind.WSET:
            object.__setattr__(self, "payload", least_rotation(p))
        elif k == Kind.XI:
            object.__setattr__(self, "payload", int(p))
        else:
            object.__setattr__(self, "payload", str(p))

    @property
    def sort_key(self) -> tuple:
        p = self.payload
        if p is None:
            pk: tuple = ()
        elif isinstance(p, tuple):
            pk = (len(p),) + tuple(natural_key(x) for x in p) if self.kind == Kind.WSET \
                else tuple(natural_key(x) for x in p)
        else:
            pk = natural_key(p)
        return (int(self.kind), pk)

    def __lt__(self, other: "VarAtom") -> bool:
        return self.sort_key < other.sort_key

    def text(self) -> str:
        k, p = self.kind, self.payload
        name = _SPELL[k]
        if k in _BARE:
            return name
        if k == Kind.QSET:
            return f"{name}[{{{','.join(p)}}}]"
        if k == Kind.WSET:
            return f"{name}[({','.join(p)})]"
        return f"{name}[{p}]"

    def latex(self) -> str:
        k, p = self.kind, self.payload
        base = _LATEX[k]
        if k in _BARE:
            return base
        if k == Kind.QSET:
            return f"{base}_{{\\{{{','.join(p)}\\}}}}"
        if k == Kind.WSET:
            return f"{base}_{{({','.join(p)})}}"
        return f"{base}_{{{p}}}"

    def __repr__(self) -> str:
        return self.text()


# --- atom registry ---------------------------------------------------------

_lock = threading.Lock()
_index: dict[VarAtom, int] = {}
_atoms: list[VarAtom] = []


def _atom_index(atom: VarAtom) -> int:
    i = _index.get(atom)
    if i is None:
        with _lock:
            i = _index.get(atom)
            if i is None:
                i = len(_atoms)
                _atoms.append(atom)
                _index[atom] = i
    return i


def _unpack(m: int) -> Iterator[tuple[int, int]]:
    """Yield (atom index, exponent) for nonzero fields of a packed monomial."""
    while m:
        low = (m & -m).bit_length() - 1
        i = low // _FIELD
        shift = i * _FIELD
        e = (m >> shift) & _EXP_MASK
        yield i, e
        m -= e << shift


_guard_cache: dict[int, int] = {}


def _guard_mask(nbits: int) -> int:
    nf = nbits // _FIELD + 1
    g = _guard_cache.get(nf)
    if g is None:
        g = 0
        for i in range(nf):
            g |= _GUARD << (i * _FIELD)
        _guard_cache[nf] = g
    return g


def _divides(d: int, m: int) -> bool:
    g = _guard_mask(max(m.bit_length(), d.bit_length()))
    return ((m | g) - d) & g == g


def _norm(c) -> Coeff:
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def _coerce_coeff(c) -> Coeff:
    if isinstance(c, bool):
        return int(c)
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        return _norm(c)
    if isinstance(c, str):
        return _norm(Fraction(c))
    raise TypeError(f"not an exact coefficient: {c!r}")


class MPoly:
    """Immutable sparse polynomial with rational coefficients."""

    __slots__ = ("_t", "_hash")

    def __init__(self, terms: Mapping[int, Coeff] | None = None):
        self._t: dict[int, Coeff] = {m: c for m, c in (terms or {}).items() if c != 0}
        self._hash = None

    # -- construction ------------------------------------------------------
    @classmethod
    def _raw(cls, t: dict) -> "MPoly":
        p = cls.__new__(cls)
        p._t = t
        p._hash = None
        return p

    @classmethod
    def const(cls, c) -> "MPoly":
        c = _coerce_coeff(c)
        return cls._raw({0: c} if c else {})

    @classmethod
    def var(cls, atom: VarAtom, exp: int = 1) -> "MPoly":
        if exp < 0:
            raise ValueError("negative exponent")
        if exp >= _GUARD:
            raise OverflowError("exponent too large")
        return cls._raw({exp << (_atom_index(atom) * _FIELD): 1})

    @classmethod
    def monomial(cls, powers: Mapping[VarAtom, int], coeff=1) -> "MPoly":
        m = 0
        for a, e in powers.items():
            if e < 0:
                raise ValueError("negative exponent")
            if e:
                m += e << (_atom_index(a) * _FIELD)
        c = _coerce_coeff(coeff)
        return cls._raw({m: c} if c else {})

    @classmethod
    def from_terms(cls, items: Iterable[tuple[Mapping[VarAtom, int], Coeff]]) -> "MPoly":
        acc: dict[int, Coeff] = {}
        for powers, c in items:
            m = 0
            for a, e in powers.items():
                if e:
                    m += e << (_atom_index(a) * _FIELD)
            acc[m] = acc.get(m, 0) + _coerce_coeff(c)
        return cls._raw({m: _norm(c) for m, c in acc.items() if c != 0})

    @staticmethod
    def coerce(x) -> "MPoly":
        if isinstance(x, MPoly):
            return x
        if isinstance(x, VarAtom):
            return MPoly.var(x)
        return MPoly.const(x)

    # -- inspection ----------------------------------------------------------
    def is_zero(self) -> bool:
        return not self._t

    def __bool__(self) -> bool:
        return bool(self._t)

    def __len__(self) -> int:
        return len(self._t)

    def terms(self) -> Iterator[tuple[dict[VarAtom, int], Coeff]]:
        for m, c in self._t.items():
            yield {_atoms[i]: e for i, e in _unpack(m)}, c

    def atoms(self) -> set[VarAtom]:
        out = set()
        for m in self._t:
            for i, _ in _unpack(m):
                out.add(_atoms[i])
        return out

    def degree(self, atom: VarAtom | None = None) -> int:
        """Total degree, or the degree in one atom; -1 for the zero polynomial."""
        if not self._t:
            return -1
        if atom is None:
            return max(sum(e for _, e in _unpack(m)) for m in self._t)
        sh = _atom_index(atom) * _FIELD
        return max((m >> sh) & _EXP_MASK for m in self._t)

    def constant_term(self) -> Coeff:
        return self._t.get(0, 0)

    def is_constant(self) -> bool:
        return not self._t or (len(self._t) == 1 and 0 in self._t)

    def __eq__(self, other) -> bool:
        if isinstance(other, MPoly):
            return self._t == other._t
        if isinstance(other, (int, Fraction)):
            return self._t == ({0: other} if other else {})
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._t.items()))
        return self._hash

    # -- arithmetic ----------------------------------------------------------
    def __add__(self, other) -> "MPoly":
        o = MPoly.coerce(other)
        if len(o._t) > len(self._t):
            a, b = o._t, self._t
        else:
            a, b = self._t, o._t
        t = dict(a)
        for m, c in b.items():
            s = t.get(m, 0) + c
            if s:
                t[m] = _norm(s)
            else:
                t.pop(m, None)
        return MPoly._raw(t)

    __radd__ = __add__

    def __neg__(self) -> "MPoly":
        return MPoly._raw({m: -c for m, c in self._t.items()})

    def __sub__(self, other) -> "MPoly":
        return self + (-MPoly.coerce(other))

    def __rsub__(self, other) -> "MPoly":
        return MPoly.coerce(other) + (-self)

    def __mul__(self, other) -> "MPoly":
        if isinstance(other, (int, Fraction)):
            c = _coerce_coeff(other)
            if not c:
                return MPoly._raw({})
            return MPoly._raw({m: _norm(v * c) for m, v in self._t.items()})
        o = MPoly.coerce(other)
        a, b = self._t, o._t
        if not a or not b:
            return MPoly._raw({})
        if len(a) < len(b):
            a, b = b, a
        t: dict[int, Coeff] = {}
        get = t.get
        for m2, c2 in b.items():
            for m1, c1 in a.items():
                m = m1 + m2
                t[m] = get(m, 0) + c1 * c2
        return MPoly._raw({m: _norm(c) for m, c in t.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "MPoly":
        if n < 0:
            raise ValueError("negative power")
        result = MPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __truediv__(self, other) -> "MPoly":
        if isinstance(other, (int, Fraction)):
            c = _coerce_coeff(other)
            return MPoly._raw({m: _norm(Fraction(v) / c) for m, v in self._t.items()})
        return self.exact_div(MPoly.coerce(other))

    def exact_div(self, d: "MPoly") -> "MPoly":
        """Quotient self/d; raises ArithmeticError unless d divides self exactly."""
        if not d._t:
            raise ZeroDivisionError("division by zero polynomial")
        if not self._t:
            return self
        if len(d._t) == 1:
            (dm, dc), = d._t.items()
            out = {}
            for m, c in self._t.items():
                if not _divides(dm, m):
                    raise ArithmeticError("inexact polynomial division")
                out[m - dm] = _norm(Fraction(c) / dc) if not isinstance(c, int) or c % dc \
                    else c // dc
            return MPoly._raw(out)
        lm_d = max(d._t)
        lc_d = d._t[lm_d]
        rem = dict(self._t)
        heap = [-m for m in rem]
        heapq.heapify(heap)
        q: dict[int, Coeff] = {}
        while rem:
            lm = -heapq.heappop(heap)
            c = rem.get(lm)
            if c is None:
                continue
            if not _divides(lm_d, lm):
                raise ArithmeticError("inexact polynomial division")
            qm = lm - lm_d
            qc = c // lc_d if isinstance(c, int) and isinstance(lc_d, int) and c % lc_d == 0 \
                else _norm(Fraction(c) / lc_d)
            q[qm] = qc
            for m, dc in d._t.items():
                k = qm + m
                old = rem.get(k)
                new = (old or 0) - qc * dc
                if new:
                    rem[k] = _norm(new)
                    if old is None:
                        heapq.heappush(heap, -k)
                elif old is not None:
                    del rem[k]
        return MPoly._raw(q)

    # -- calculus and substitution -------------------------------------------
    def derive(self, atom: VarAtom) -> "MPoly":
        sh = _atom_index(atom) * _FIELD
        one = 1 << sh
        out = {}
        for m, c in self._t.items():
            e = (m >> sh) & _EXP_MASK
            if e:
                out[m - one] = c * e
        return MPoly._raw(out)

    def extract(self, atom: VarAtom, power: int) -> "MPoly":
        """Coefficient of atom**power (other atoms untouched)."""
        if power < 0:
            raise ValueError("power must be >= 0")
        sh = _atom_index(atom) * _FIELD
        out = {}
        for m, c in self._t.items():
            if (m >> sh) & _EXP_MASK == power:
                out[m - (power << sh)] = c
        return MPoly._raw(out)

    def coefficients(self, atom: VarAtom) -> dict[int, "MPoly"]:
        sh = _atom_index(atom) * _FIELD
        out: dict[int, dict] = {}
        for m, c in self._t.items():
            e = (m >> sh) & _EXP_MASK
            out.setdefault(e, {})[m - (e << sh)] = c
        return {e: MPoly._raw(t) for e, t in out.items()}

    def substitute(self, mapping: Mapping[VarAtom, object]) -> "MPoly":
        """Ring homomorphism sending each mapped atom to the given polynomial."""
        if not mapping:
            return self
        subs = {_atom_index(a): MPoly.coerce(v) for a, v in mapping.items()}
        powers: dict[tuple[int, int], MPoly] = {}
        acc = MPoly._raw({})
        grouped: dict[int, dict[int, Coeff]] = {}
        # split each monomial into the untouched part and the substituted part
        for m, c in self._t.items():
            keep = 0
            key = []
            for i, e in _unpack(m):
                if i in subs:
                    key.append((i, e))
                else:
                    keep += e << (i * _FIELD)
            grouped.setdefault(tuple(key), {})
            g = grouped[tuple(key)]
            g[keep] = g.get(keep, 0) + c
        for key, rest in grouped.items():
            factor = MPoly.const(1)
            for i, e in key:
                p = powers.get((i, e))
                if p is None:
                    p = subs[i] ** e
                    powers[(i, e)] = p
                factor = factor * p
            acc = acc + factor * MPoly._raw({m: _norm(c) for m, c in rest.items() if c})
        return acc

    def evaluate(self, values: Mapping[VarAtom, Coeff]) -> "MPoly":
        return self.substitute({a: MPoly.const(v) for a, v in values.items()})

    def map_terms(self, fn) -> "MPoly":
        """Rebuild from fn(powers, coeff) -> MPoly applied to every term."""
        acc = MPoly._raw({})
        for powers, c in self.terms():
            acc = acc + fn(powers, c)
        return acc

    def filter_terms(self, pred) -> "MPoly":
        out = {}
        for m, c in self._t.items():
            if pred({_atoms[i]: e for i, e in _unpack(m)}):
                out[m] = c
        return MPoly._raw(out)

    # -- rendering -----------------------------------------------------------
    def sorted_terms(self) -> list[tuple[list[tuple[VarAtom, int]], Coeff]]:
        rows = []
        for m, c in self._t.items():
            mono = sorted(((_atoms[i], e) for i, e in _unpack(m)), key=lambda t: t[0].sort_key)
            deg = sum(e for _, e in mono)
            key = (-deg, tuple((a.sort_key, -e) for a, e in mono))
            rows.append((key, mono, c))
        rows.sort(key=lambda r: r[0])
        return [(mono, c) for _, mono, c in rows]

    def render(self, fmt: str = "text") -> str:
        if fmt == "text":
            return self._text()
        if fmt == "json":
            return json.dumps(self.to_json(), separators=(",", ":"))
        if fmt == "latex":
            return self._latex()
        raise ValueError(f"unknown format {fmt!r}")

    def _text(self) -> str:
        if not self._t:
            return "0"
        out = []
        for k, (mono, c) in enumerate(self.sorted_terms()):
            neg = c < 0
            a = -c if neg else c
            factors = [f"{at.text()}^{e}" if e > 1 else at.text() for at, e in mono]
            if a != 1 or not factors:
                factors.insert(0, str(a))
            body = "*".join(factors)
            if k == 0:
                out.append(("-" if neg else "") + body)
            else:
                out.append((" - " if neg else " + ") + body)
        return "".join(out)

    def _latex(self) -> str:
        if not self._t:
            return "0"
        out = []
        for k, (mono, c) in enumerate(self.sorted_terms()):
            neg = c < 0
            a = Fraction(-c if neg else c)
            body = "".join(f"{at.latex()}^{{{e}}}" if e > 1 else at.latex() for at, e in mono)
            if a != 1 or not body:
                cs = str(a.numerator) if a.denominator == 1 else \
                    f"\\frac{{{a.numerator}}}{{{a.denominator}}}"
                body = cs + body
            if k == 0:
                out.append(("-" if neg else "") + body)
            else:
                out.append((" - " if neg else " + ") + body)
        return "".join(out)

    def to_json(self) -> dict:
        terms = []
        for mono, c in self.sorted_terms():
            f = Fraction(c)
            terms.append({"c": f"{f.numerator}/{f.denominator}",
                          "m": {a.text(): e for a, e in mono}})
        return {"terms": terms}

    @classmethod
    def from_json(cls, obj) -> "MPoly":
        if isinstance(obj, str):
            obj = json.loads(obj)
        items = []
        for t in obj["terms"]:
            items.append(({parse_atom(k): int(v) for k, v in t["m"].items()}, Fraction(t["c"])))
        return cls.from_terms(items)

    def __str__(self) -> str:
        return self._text()

    def __repr__(self) -> str:
        return f"MPoly({self._text()!r})"


# --- atom constructors -------------------------------------------------------

X = VarAtom(Kind.X)
Y = VarAtom(Kind.Y)
Z = VarAtom(Kind.Z)
Q = VarAtom(Kind.Q)
W = VarAtom(Kind.W)
THETA = VarAtom(Kind.THETA)


def alpha(e) -> VarAtom:
    return VarAtom(Kind.ALPHA, e)


def beta(e) -> VarAtom:
    return VarAtom(Kind.BETA, e)


def qv(v) -> VarAtom:
    return VarAtom(Kind.QV, v)


def qset(flags) -> VarAtom:
    return VarAtom(Kind.QSET, tuple(flags))


def wset(seq) -> VarAtom:
    return VarAtom(Kind.WSET, tuple(seq))


def xi(a: int) -> VarAtom:
    return VarAtom(Kind.XI, a)


def wi(f) -> VarAtom:
    return VarAtom(Kind.WI, f)


def P(x) -> MPoly:
    """Shorthand: lift an atom or a number to a polynomial."""
    return MPoly.coerce(x)


ZERO = MPoly.const(0)
ONE = MPoly.const(1)


def poly_sum(items: Iterable[MPoly]) -> MPoly:
    acc: dict[int, Coeff] = {}
    for p in items:
        for m, c in p._t.items():
            acc[m] = acc.get(m, 0) + c
    return MPoly._raw({m: _norm(c) for m, c in acc.items() if c})


def poly_prod(items: Iterable[MPoly]) -> MPoly:
    r = ONE
    for p in items:
        r = r * p
    return r


# --- parsing -----------------------------------------------------------------

_ATOM_RE = re.compile(
    r"(theta|alpha|beta|qv|qs|ws|xi|wi|x|y|z|q|w)(?:\[([^\]]*)\])?"
)
_NAME_KIND = {v: k for k, v in _SPELL.items()}


class PolyParseError(ValueError):
    pass


def parse_atom(text: str) -> VarAtom:
    m = _ATOM_RE.fullmatch(text.strip())
    if not m:
        raise PolyParseError(f"bad atom {text!r}")
    return _make_atom(m.group(1), m.group(2), text)


def _items(arg: str, src: str) -> tuple[str, ...]:
    inner = arg[1:-1].strip()
    if not inner:
        return ()
    items = [s.strip() for s in inner.split(",")]
    if not all(items):
        raise PolyParseError(f"empty flag id in {src!r}")
    return tuple(items)


def _make_atom(name: str, arg: str | None, src: str) -> VarAtom:
    kind = _NAME_KIND[name]
    if kind in _BARE:
        if arg is not None:
            raise PolyParseError(f"{name} takes no index in {src!r}")
        return VarAtom(kind)
    if arg is None:
        raise PolyParseError(f"{name} needs an index in {src!r}")
    arg = arg.strip()
    if kind == Kind.QSET:
        if not (arg.startswith("{") and arg.endswith("}")):
            raise PolyParseError(f"qs[] expects {{...}} in {src!r}")
        return VarAtom(kind, _items(arg, src))
    if kind == Kind.WSET:
        if not (arg.startswith("(") and arg.endswith(")")):
            raise PolyParseError(f"ws[] expects (...) in {src!r}")
        return VarAtom(kind, _items(arg, src))
    if kind == Kind.XI:
        return VarAtom(kind, int(arg))
    return VarAtom(kind, arg)


_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<atom>(?:theta|alpha|beta|qv|qs|ws|xi|wi|x|y|z|q|w)"
    r"(?:\[[^\]]*\])?)|(?P<op>[-+*^]))"
)


def parse(text: str) -> MPoly:
    """Parse the canonical text form back into an MPoly."""
    s = text.strip()
    if s == "0":
        return ZERO
    toks = []
    pos = 0
    while pos < len(s):
        if s[pos].isspace():
            pos += 1
            continue
        m = _TOKEN_RE.match(s, pos)
        if not m or m.end() == pos:
            raise PolyParseError(f"unexpected character at {pos}: {s[pos:pos + 10]!r}")
        for kind in ("num", "atom", "op"):
            if m.group(kind) is not None:
                toks.append((kind, m.group(kind)))
                break
        pos = m.end()
    terms = []
    i = 0
    sign = 1
    if toks and toks[0] == ("op", "-"):
        sign = -1
        i = 1
    elif toks and toks[0] == ("op", "+"):
        i = 1
    while True:
        coeff = Fraction(sign)
        powers: dict[VarAtom, int] = {}
        expect_factor = True
        while expect_factor:
            if i >= len(toks):
                raise PolyParseError("unexpected end of input")
            kind, val = toks[i]
            i += 1
            if kind == "num":
                coeff *= Fraction(val)
            elif kind == "atom":
                a = parse_atom(val)
                e = 1
                if i < len(toks) and toks[i] == ("op", "^"):
                    if i + 1 >= len(toks) or toks[i + 1][0] != "num" or "/" in toks[i + 1][1]:
                        raise PolyParseError("exponent must be an integer")
                    e = int(toks[i + 1][1])
                    i += 2
                powers[a] = powers.get(a, 0) + e
            else:
                raise PolyParseError(f"unexpected operator {val!r}")
            if i < len(toks) and toks[i] == ("op", "*"):
                i += 1
            else:
                expect_factor = False
        terms.append((powers, coeff))
        if i >= len(toks):
            break
        kind, val = toks[i]
        if kind != "op" or val not in "+-":
            raise PolyParseError(f"expected + or -, got {val!r}")
        sign = 1 if val == "+" else -1
        i += 1
    return MPoly.from_terms(terms)
