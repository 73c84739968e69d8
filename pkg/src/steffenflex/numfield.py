"""Exact arithmetic in towers of real quadratic extensions of the rationals.

An element of the depth-k tower Q(sqrt(d1), ..., sqrt(dk)) is stored as a
binary coefficient tree of depth k with Fraction leaves: at level i the pair
(p, q) encodes p + q*sqrt(di), where p and q live one level below.  Every
radicand is certified positive and a non-square in the field below it, so
each level is a genuine quadratic field extension and an element is zero
exactly when all of its leaf coefficients are zero.  That makes equality,
zero tests and sign determination exact and terminating.

Decimal enclosures are produced by interval arithmetic: Fraction endpoints
are combined exactly, and the only outward rounding happens in the integer
square-root enclosures of the radicands, which tighten as precision grows.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import isqrt


Rational = Fraction


class NumFieldError(Exception):
    pass


class IncompatibleTowers(NumFieldError):
    """Neither element's tower is a prefix of the other's."""


class DivisionByZero(ZeroDivisionError, NumFieldError):
    pass


class NonPositiveRadicand(NumFieldError, ValueError):
    pass


class NegativeInput(NumFieldError, ValueError):
    pass


class AlreadySquare(NumFieldError):
    """Raised by adjoin when the candidate radicand is a perfect square.

    Carries the in-field square root so the caller can proceed without a
    degenerate (non-field) extension.
    """

    def __init__(self, root: "FieldElem"):
        super().__init__(f"radicand is already a square: ({root})^2")
        self.root = root


class ExprError(NumFieldError, ValueError):
    """Malformed expression tree."""


# ---------------------------------------------------------------------------
# Coefficient-tree primitives.  A tree of depth 0 is a Fraction; a tree of
# depth k > 0 is a pair (p, q) of depth k-1 trees meaning p + q*sqrt(d_k).
# `rads` is the tuple of radicand trees, rads[i] having depth i.
# ---------------------------------------------------------------------------

def _t_const(value: Fraction, k: int):
    t = value
    for i in range(k):
        t = (t, _t_zero(i))
    return t


@lru_cache(maxsize=64)
def _t_zero(k: int):
    if k == 0:
        return Fraction(0)
    return (_t_zero(k - 1), _t_zero(k - 1))


def _t_add(x, y, k):
    if k == 0:
        return x + y
    return (_t_add(x[0], y[0], k - 1), _t_add(x[1], y[1], k - 1))


def _t_sub(x, y, k):
    if k == 0:
        return x - y
    return (_t_sub(x[0], y[0], k - 1), _t_sub(x[1], y[1], k - 1))


def _t_neg(x, k):
    if k == 0:
        return -x
    return (_t_neg(x[0], k - 1), _t_neg(x[1], k - 1))


def _t_scale(x, c: Fraction, k):
    if k == 0:
        return x * c
    return (_t_scale(x[0], c, k - 1), _t_scale(x[1], c, k - 1))


def _t_mul(x, y, k, rads):
    if k == 0:
        return x * y
    p, q = x
    r, s = y
    km1 = k - 1
    pr = _t_mul(p, r, km1, rads)
    qs = _t_mul(q, s, km1, rads)
    ps = _t_mul(p, s, km1, rads)
    qr = _t_mul(q, r, km1, rads)
    return (_t_add(pr, _t_mul(qs, rads[km1], km1, rads), km1), _t_add(ps, qr, km1))


def _t_inv(x, k, rads):
    if k == 0:
        if x == 0:
            raise DivisionByZero("division by zero field element")
        return 1 / x
    p, q = x
    km1 = k - 1
    if _t_is_zero(q, km1):
        return (_t_inv(p, km1, rads), _t_zero(km1))
    # 1/(p + q*sqrt(d)) = (p - q*sqrt(d)) / (p^2 - q^2 d)
    norm = _t_sub(_t_mul(p, p, km1, rads),
                  _t_mul(_t_mul(q, q, km1, rads), rads[km1], km1, rads), km1)
    ninv = _t_inv(norm, km1, rads)
    return (_t_mul(p, ninv, km1, rads), _t_neg(_t_mul(q, ninv, km1, rads), km1))


def _t_is_zero(x, k) -> bool:
    if k == 0:
        return x == 0
    return _t_is_zero(x[0], k - 1) and _t_is_zero(x[1], k - 1)


def _t_sign(x, k, rads) -> int:
    if k == 0:
        return (x > 0) - (x < 0)
    p, q = x
    km1 = k - 1
    if _t_is_zero(q, km1):
        return _t_sign(p, km1, rads)
    if _t_is_zero(p, km1):
        return _t_sign(q, km1, rads)
    sp = _t_sign(p, km1, rads)
    sq = _t_sign(q, km1, rads)
    if sp == sq:
        return sp
    # p and q*sqrt(d) compete; compare |p| with |q|*sqrt(d) via squares
    diff = _t_sub(_t_mul(p, p, km1, rads),
                  _t_mul(_t_mul(q, q, km1, rads), rads[km1], km1, rads), km1)
    return sp * _t_sign(diff, km1, rads)


def _t_lift(x, from_k: int, to_k: int):
    for i in range(from_k, to_k):
        x = (x, _t_zero(i))
    return x


def _t_drop(x, from_k: int, to_k: int):
    """Inverse of _t_lift; requires the upper coefficients to vanish."""
    for i in range(from_k, to_k, -1):
        p, q = x
        if not _t_is_zero(q, i - 1):
            raise ValueError("element does not lie in the prefix tower")
        x = p
    return x


def _t_sqrt(x, k, rads):
    """In-field square root of the tree x, or None.

    Rational case: integer square-root tests on numerator and denominator.
    Quadratic case p + q*sqrt(d): a root u + v*sqrt(d) needs u^2 + v^2 d = p
    and 2uv = q, so u^2 is a root of T^2 - p T + q^2 d / 4; both branches of
    s = sqrt(p^2 - q^2 d) are tried and the candidate is verified by squaring.
    """
    if k == 0:
        if x < 0:
            return None
        num, den = x.numerator, x.denominator
        rn, rd = isqrt(num), isqrt(den)
        if rn * rn == num and rd * rd == den:
            return Fraction(rn, rd)
        return None
    p, q = x
    km1 = k - 1
    d = rads[km1]
    if _t_is_zero(q, km1):
        r = _t_sqrt(p, km1, rads)
        if r is not None:
            return (r, _t_zero(km1))
        # root of the form v*sqrt(d): v^2 = p/d
        v = _t_sqrt(_t_mul(p, _t_inv(d, km1, rads), km1, rads), km1, rads)
        if v is not None:
            return (_t_zero(km1), v)
        return None
    disc = _t_sub(_t_mul(p, p, km1, rads),
                  _t_mul(_t_mul(q, q, km1, rads), d, km1, rads), km1)
    if _t_sign(disc, km1, rads) < 0:
        return None
    s = _t_sqrt(disc, km1, rads)
    if s is None:
        return None
    half = Fraction(1, 2)
    for s_branch in (s, _t_neg(s, km1)):
        u2 = _t_scale(_t_add(p, s_branch, km1), half, km1)
        if _t_sign(u2, km1, rads) <= 0:
            continue
        u = _t_sqrt(u2, km1, rads)
        if u is None:
            continue
        v = _t_mul(q, _t_inv(_t_scale(u, Fraction(2), km1), km1, rads), km1, rads)
        cand = (u, v)
        if _t_is_zero(_t_sub(_t_mul(cand, cand, k, rads), x, k), k):
            return cand
    return None


# ---------------------------------------------------------------------------
# Interval arithmetic for decimal enclosures
# ---------------------------------------------------------------------------

def _sqrt_lower(f: Fraction, prec: int) -> Fraction:
    if f <= 0:
        return Fraction(0)
    scale = 10 ** prec
    n = (f.numerator * scale * scale) // f.denominator
    return Fraction(isqrt(n), scale)


def _sqrt_upper(f: Fraction, prec: int) -> Fraction:
    if f <= 0:
        return Fraction(0)
    scale = 10 ** prec
    n = -((-f.numerator * scale * scale) // f.denominator)  # ceil
    r = isqrt(n)
    if r * r < n:
        r += 1
    return Fraction(r, scale)


def _iv_add(a, b):
    return (a[0] + b[0], a[1] + b[1])


def _iv_mul(a, b):
    products = (a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1])
    return (min(products), max(products))


def _t_interval(x, k, rad_ivs):
    if k == 0:
        return (x, x)
    ip = _t_interval(x[0], k - 1, rad_ivs)
    iq = _t_interval(x[1], k - 1, rad_ivs)
    return _iv_add(ip, _iv_mul(iq, rad_ivs[k - 1]))


@lru_cache(maxsize=256)
def _radical_intervals(tower: "FieldTower", prec: int):
    """Enclosures of sqrt(d_i) for every tower level at the given precision."""
    ivs = []
    for i, rad in enumerate(tower.rads):
        lo, hi = _t_interval(rad, i, ivs)
        ivs.append((_sqrt_lower(max(lo, Fraction(0)), prec), _sqrt_upper(hi, prec)))
    return tuple(ivs)


# ---------------------------------------------------------------------------
# Public classes
# ---------------------------------------------------------------------------

class FieldTower:
    """An ordered chain of quadratic extensions of Q.

    Immutable; extend with :meth:`adjoin`, which certifies that the new
    radicand is positive and not already a square in the tower.
    """

    __slots__ = ("rads", "_hash")

    def __init__(self, rads=()):
        self.rads = tuple(rads)
        self._hash = hash(self.rads)

    @property
    def depth(self) -> int:
        return len(self.rads)

    def __eq__(self, other):
        return isinstance(other, FieldTower) and self.rads == other.rads

    def __hash__(self):
        return self._hash

    def __repr__(self):
        if not self.rads:
            return "FieldTower(Q)"
        names = ", ".join(_render_tree(r, i, self.rads) for i, r in enumerate(self.rads))
        return f"FieldTower(Q; sqrt of {names})"

    def is_prefix_of(self, other: "FieldTower") -> bool:
        return self.rads == other.rads[: len(self.rads)]

    def elem(self, value) -> "FieldElem":
        """Embed a rational constant into this tower."""
        if isinstance(value, FieldElem):
            if not value.tower.is_prefix_of(self):
                raise IncompatibleTowers("element does not embed into this tower")
            return value.lift_to(self)
        return FieldElem(self, _t_const(Fraction(value), self.depth))

    def zero(self) -> "FieldElem":
        return FieldElem(self, _t_zero(self.depth))

    def one(self) -> "FieldElem":
        return self.elem(1)

    def radical(self, i: int) -> "FieldElem":
        """sqrt(d_{i+1}) as an element of this tower (0-based level index)."""
        if not 0 <= i < self.depth:
            raise IndexError("no such tower level")
        tree = (_t_zero(i), _t_const(Fraction(1), i))
        return FieldElem(self, _t_lift(tree, i + 1, self.depth))

    def radicand(self, i: int) -> "FieldElem":
        """d_{i+1} lifted into this tower."""
        if not 0 <= i < self.depth:
            raise IndexError("no such tower level")
        return FieldElem(self, _t_lift(self.rads[i], i, self.depth))

    def adjoin(self, d) -> "FieldTower":
        """Extend the tower by sqrt(d).

        Raises NonPositiveRadicand if d is not strictly positive, and
        AlreadySquare (carrying the in-field root) if d is a perfect square
        in this tower, which would make the extension degenerate.
        """
        d = self.elem(d) if not isinstance(d, FieldElem) else self.elem(d)
        if d.sign() <= 0:
            raise NonPositiveRadicand(f"radicand must be positive, got sign {d.sign()}")
        root = d.sqrt()
        if root is not None:
            raise AlreadySquare(root)
        return FieldTower(self.rads + (d.tree,))


QQ = FieldTower()


class FieldElem:
    """An exact number in a quadratic extension tower.

    Supports field arithmetic via the usual operators (mixing with ints and
    Fractions, or with elements of a prefix/extension tower), exact sign and
    zero tests, in-field square roots, and guaranteed decimal enclosures.
    Immutable and safe to share between workers.
    """

    __slots__ = ("tower", "tree")

    def __init__(self, tower: FieldTower, tree):
        self.tower = tower
        self.tree = tree

    # -- coercion ----------------------------------------------------------

    def lift_to(self, tower: FieldTower) -> "FieldElem":
        if self.tower == tower:
            return self
        if not self.tower.is_prefix_of(tower):
            raise IncompatibleTowers("can only lift into an extension tower")
        return FieldElem(tower, _t_lift(self.tree, self.tower.depth, tower.depth))

    def project_to(self, tower: FieldTower) -> "FieldElem":
        """Drop to a prefix tower; the upper coefficients must vanish."""
        if not tower.is_prefix_of(self.tower):
            raise IncompatibleTowers("target is not a prefix tower")
        try:
            tree = _t_drop(self.tree, self.tower.depth, tower.depth)
        except ValueError as exc:
            raise IncompatibleTowers(str(exc)) from None
        return FieldElem(tower, tree)

    def _pair(self, other):
        if isinstance(other, FieldElem):
            if self.tower == other.tower:
                return self.tree, other.tree, self.tower
            if self.tower.is_prefix_of(other.tower):
                return (_t_lift(self.tree, self.tower.depth, other.tower.depth),
                        other.tree, other.tower)
            if other.tower.is_prefix_of(self.tower):
                return (self.tree,
                        _t_lift(other.tree, other.tower.depth, self.tower.depth),
                        self.tower)
            raise IncompatibleTowers("neither tower is a prefix of the other")
        if isinstance(other, (int, Fraction)):
            return self.tree, _t_const(Fraction(other), self.tower.depth), self.tower
        return None

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        a, b, tower = pair
        return FieldElem(tower, _t_add(a, b, tower.depth))

    __radd__ = __add__

    def __sub__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        a, b, tower = pair
        return FieldElem(tower, _t_sub(a, b, tower.depth))

    def __rsub__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        a, b, tower = pair
        return FieldElem(tower, _t_sub(b, a, tower.depth))

    def __mul__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        a, b, tower = pair
        return FieldElem(tower, _t_mul(a, b, tower.depth, tower.rads))

    __rmul__ = __mul__

    def __truediv__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        a, b, tower = pair
        if _t_is_zero(b, tower.depth):
            raise DivisionByZero("division by zero field element")
        return FieldElem(tower, _t_mul(a, _t_inv(b, tower.depth, tower.rads),
                                       tower.depth, tower.rads))

    def __rtruediv__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        a, b, tower = pair
        if _t_is_zero(a, tower.depth):
            raise DivisionByZero("division by zero field element")
        return FieldElem(tower, _t_mul(b, _t_inv(a, tower.depth, tower.rads),
                                       tower.depth, tower.rads))

    def __neg__(self):
        return FieldElem(self.tower, _t_neg(self.tree, self.tower.depth))

    def __pos__(self):
        return self

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        out = self.tower.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    def __eq__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        a, b, tower = pair
        return _t_is_zero(_t_sub(a, b, tower.depth), tower.depth)

    def __hash__(self):
        # canonical coefficient representation makes structural hashing sound,
        # but only within one tower; hash by approximate value is not exact.
        raise TypeError("FieldElem is not hashable")

    def __bool__(self):
        return not self.is_zero()

    # -- predicates ----------------------------------------------------------

    def is_zero(self) -> bool:
        return _t_is_zero(self.tree, self.tower.depth)

    def sign(self) -> int:
        """Exact sign of the represented real: -1, 0 or +1."""
        return _t_sign(self.tree, self.tower.depth, self.tower.rads)

    def sqrt(self):
        """The in-field square root with sign >= 0, or None.

        Raises NegativeInput when the element is negative.
        """
        if self.sign() < 0:
            raise NegativeInput("square root of a negative element")
        tree = _t_sqrt(self.tree, self.tower.depth, self.tower.rads)
        if tree is None:
            return None
        root = FieldElem(self.tower, tree)
        return -root if root.sign() < 0 else root

    # -- numeric output -------------------------------------------------------

    def approx(self, digits: int):
        """A Fraction interval of width < 10**-digits containing the value."""
        if digits < 1:
            raise ValueError("digits must be >= 1")
        target = Fraction(1, 10 ** digits)
        prec = digits + 8
        while True:
            ivs = _radical_intervals(self.tower, prec)
            lo, hi = _t_interval(self.tree, self.tower.depth, ivs)
            if hi - lo < target:
                return (lo, hi)
            prec *= 2

    def __float__(self):
        lo, hi = self.approx(20)
        return float((lo + hi) / 2)

    def decimal_str(self, digits: int) -> str:
        lo, hi = self.approx(digits + 2)
        mid = (lo + hi) / 2
        return f"{float(mid):.{digits}f}" if digits <= 17 else _long_decimal(mid, digits)

    def __repr__(self):
        return f"FieldElem({self})"

    def __str__(self):
        return _render_tree(self.tree, self.tower.depth, self.tower.rads)


def _long_decimal(value: Fraction, digits: int) -> str:
    sign = "-" if value < 0 else ""
    value = abs(value)
    scaled = (value.numerator * 10 ** digits + value.denominator // 2) // value.denominator
    text = str(scaled).rjust(digits + 1, "0")
    return f"{sign}{text[:-digits]}.{text[-digits:]}"


def _render_tree(tree, k, rads) -> str:
    if k == 0:
        return str(tree)
    p, q = tree
    km1 = k - 1
    if _t_is_zero(q, km1):
        return _render_tree(p, km1, rads)
    root = f"sqrt({_render_tree(rads[km1], km1, rads)})"
    one = _t_const(Fraction(1), km1)
    if _t_is_zero(_t_sub(q, one, km1), km1):
        term = root
    elif _t_is_zero(_t_add(q, one, km1), km1):
        term = f"-{root}"
    else:
        qs = _render_tree(q, km1, rads)
        if "+" in qs or " " in qs or (qs.count("-") > (1 if qs.startswith("-") else 0)):
            qs = f"({qs})"
        term = f"{qs}*{root}"
    if _t_is_zero(p, km1):
        return term
    ps = _render_tree(p, km1, rads)
    if term.startswith("-"):
        return f"{ps} - {term[1:]}"
    return f"{ps} + {term}"


# ---------------------------------------------------------------------------
# Expression-tree serialization (the model file number format)
# ---------------------------------------------------------------------------
# Grammar: {"rat": "p/q"} | {"sqrt": expr} | {"add": [expr...]}
#          | {"mul": [expr...]} | {"neg": expr}

def to_expr(x: FieldElem) -> dict:
    """Canonical expression tree for a field element."""
    return _expr_of_tree(x.tree, x.tower.depth, x.tower.rads)


def tower_exprs(tower: FieldTower) -> list:
    """Expression trees for the tower's radicands, each over its prefix."""
    return [_expr_of_tree(rad, i, tower.rads) for i, rad in enumerate(tower.rads)]


def _expr_of_tree(tree, k, rads):
    if k == 0:
        return {"rat": str(tree)}
    p, q = tree
    km1 = k - 1
    if _t_is_zero(q, km1):
        return _expr_of_tree(p, km1, rads)
    root = {"sqrt": _expr_of_tree(rads[km1], km1, rads)}
    one = _t_const(Fraction(1), km1)
    if _t_is_zero(_t_sub(q, one, km1), km1):
        term = root
    elif _t_is_zero(_t_add(q, one, km1), km1):
        term = {"neg": root}
    else:
        term = {"mul": [_expr_of_tree(q, km1, rads), root]}
    if _t_is_zero(p, km1):
        return term
    return {"add": [_expr_of_tree(p, km1, rads), term]}


class ExprBuilder:
    """Evaluates expression trees, growing a working tower as needed.

    Square-root nodes reuse an in-field root when one exists (so radicals of
    already-known radicands resolve to tower elements); otherwise the
    radicand is adjoined as a new tower level.  Feeding the same expressions
    in the same order therefore reproduces an identical tower.
    """

    def __init__(self, tower: FieldTower | None = None):
        self.tower = tower if tower is not None else QQ

    def eval(self, node) -> FieldElem:
        if not isinstance(node, dict) or len(node) != 1:
            raise ExprError(f"expression node must be a single-key object, got {node!r}")
        (op, arg), = node.items()
        if op == "rat":
            try:
                return self.tower.elem(Fraction(arg) if isinstance(arg, str) else Fraction(arg))
            except (ValueError, TypeError) as exc:
                raise ExprError(f"bad rational literal {arg!r}") from exc
        if op == "neg":
            return -self.eval(arg)
        if op in ("add", "mul"):
            if not isinstance(arg, list) or not arg:
                raise ExprError(f"'{op}' needs a non-empty list")
            values = [self.eval(item) for item in arg]
            out = values[0].lift_to(self.tower)
            for value in values[1:]:
                out = out + value if op == "add" else out * value
            return out
        if op == "sqrt":
            inner = self.eval(arg).lift_to(self.tower)
            if inner.sign() < 0:
                raise ExprError("sqrt of a negative expression")
            root = inner.sqrt()
            if root is not None:
                return root
            self.tower = self.tower.adjoin(inner)
            return self.tower.radical(self.tower.depth - 1)
        raise ExprError(f"unknown expression operator {op!r}")
