"""Exact arithmetic in Q(sqrt3) and exact affine isometries of the plane.

Q(sqrt3) is large enough to hold every rotation and reflection matrix of the
seventeen wallpaper groups (all relevant angles are multiples of pi/6 or
pi/4, and the doubled-angle cosines/sines lie in Q(sqrt3) or Q).  Every value
here is immutable and every operation is pure, so everything is safe to share
across threads.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction


class NonCrystallographicError(ValueError):
    """Rotation of finite order larger than 6 (impossible in a wallpaper group)."""


class NoFixedPointError(ValueError):
    """fixed_point() was asked for an isometry that is not a rotation."""


_Raw = "QuadNum | Fraction | int"


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


@dataclass(frozen=True)
class QuadNum:
    """Element a + b*sqrt(3) of Q(sqrt3), with a, b reduced rationals."""

    a: Fraction = Fraction(0)
    b: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "a", _frac(self.a))
        object.__setattr__(self, "b", _frac(self.b))

    # -- constructors ------------------------------------------------------

    @staticmethod
    def of(x: _Raw) -> "QuadNum":
        if isinstance(x, QuadNum):
            return x
        return QuadNum(_frac(x))

    @staticmethod
    def sqrt3() -> "QuadNum":
        return QuadNum(0, 1)

    # -- ring/field structure ---------------------------------------------

    def __add__(self, other) -> "QuadNum":
        other = QuadNum.of(other)
        return QuadNum(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __neg__(self) -> "QuadNum":
        return QuadNum(-self.a, -self.b)

    def __sub__(self, other) -> "QuadNum":
        return self + (-QuadNum.of(other))

    def __rsub__(self, other) -> "QuadNum":
        return (-self) + other

    def __mul__(self, other) -> "QuadNum":
        other = QuadNum.of(other)
        return QuadNum(
            self.a * other.a + 3 * self.b * other.b,
            self.a * other.b + self.b * other.a,
        )

    __rmul__ = __mul__

    def conjugate(self) -> "QuadNum":
        return QuadNum(self.a, -self.b)

    def norm(self) -> Fraction:
        """Field norm a^2 - 3 b^2 (rational)."""
        return self.a * self.a - 3 * self.b * self.b

    def inverse(self) -> "QuadNum":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt3)")
        return QuadNum(self.a / n, -self.b / n)

    def __truediv__(self, other) -> "QuadNum":
        return self * QuadNum.of(other).inverse()

    def __rtruediv__(self, other) -> "QuadNum":
        return QuadNum.of(other) * self.inverse()

    def __pow__(self, k: int) -> "QuadNum":
        if k < 0:
            return self.inverse() ** (-k)
        out = QuadNum(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- order and size -----------------------------------------------------

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def is_rational(self) -> bool:
        return self.b == 0

    def is_integer(self) -> bool:
        return self.b == 0 and self.a.denominator == 1

    def sign(self) -> int:
        """Exact sign of the real number a + b*sqrt3."""
        if self.a == 0 and self.b == 0:
            return 0
        if self.a >= 0 and self.b >= 0:
            return 1
        if self.a <= 0 and self.b <= 0:
            return -1
        # opposite signs: compare a^2 with 3 b^2
        bigger_a = self.a * self.a > 3 * self.b * self.b
        if self.a > 0:
            return 1 if bigger_a else -1
        return -1 if bigger_a else 1

    def __lt__(self, other) -> bool:
        return (self - other).sign() < 0

    def __le__(self, other) -> bool:
        return (self - other).sign() <= 0

    def __gt__(self, other) -> bool:
        return (self - other).sign() > 0

    def __ge__(self, other) -> bool:
        return (self - other).sign() >= 0

    def __abs__(self) -> "QuadNum":
        return -self if self.sign() < 0 else self

    def __float__(self) -> float:
        return float(self.a) + float(self.b) * math.sqrt(3.0)

    def floor(self) -> int:
        """Largest integer <= self, computed exactly."""
        if self.b == 0:
            return self.a.numerator // self.a.denominator
        n = math.floor(float(self))
        while QuadNum(n) > self:
            n -= 1
        while QuadNum(n + 1) <= self:
            n += 1
        return n

    def round_nearest(self) -> int:
        return (self + Fraction(1, 2)).floor()

    # -- text --------------------------------------------------------------

    def __str__(self) -> str:
        return render_quadnum(self)

    def __repr__(self) -> str:
        return f"QuadNum({self.a!r}, {self.b!r})"


def _render_frac(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def render_quadnum(x: QuadNum) -> str:
    """Canonical text form: `p/q`, `p/q+r/s*rt3` or `p/q-r/s*rt3`."""
    if x.b == 0:
        return _render_frac(x.a)
    mag = _render_frac(abs(x.b))
    tail = "rt3" if mag == "1" else f"{mag}*rt3"
    sign = "-" if x.b < 0 else "+"
    if x.a == 0:
        return tail if sign == "+" else "-" + tail
    return f"{_render_frac(x.a)}{sign}{tail}"


_QN_RE = re.compile(
    r"""^\s*(?P<rat>[+-]?\d+(?:/\d+)?)?\s*
        (?:(?P<sign>[+-])?\s*(?:(?P<coef>\d+(?:/\d+)?)\s*\*\s*)?rt3)?\s*$""",
    re.VERBOSE,
)


def parse_quadnum(text: str) -> QuadNum:
    """Parse the canonical text form (also accepts `rt3`, `-rt3`, `2*rt3`)."""
    m = _QN_RE.match(text)
    if not m or (m.group("rat") is None and "rt3" not in text):
        raise ValueError(f"cannot parse {text!r} as an element of Q(sqrt3)")
    a = Fraction(m.group("rat")) if m.group("rat") else Fraction(0)
    b = Fraction(0)
    if "rt3" in text:
        b = Fraction(m.group("coef")) if m.group("coef") else Fraction(1)
        if m.group("sign") == "-" or (m.group("rat") is None and text.lstrip().startswith("-")):
            b = -b
    return QuadNum(a, b)


@dataclass(frozen=True)
class Vec2:
    """Plane vector with exact Q(sqrt3) coordinates."""

    x: QuadNum
    y: QuadNum

    def __post_init__(self):
        object.__setattr__(self, "x", QuadNum.of(self.x))
        object.__setattr__(self, "y", QuadNum.of(self.y))

    def __add__(self, other: "Vec2") -> "Vec2":
        return Vec2(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "Vec2") -> "Vec2":
        return Vec2(self.x - other.x, self.y - other.y)

    def __neg__(self) -> "Vec2":
        return Vec2(-self.x, -self.y)

    def scale(self, k: _Raw) -> "Vec2":
        k = QuadNum.of(k)
        return Vec2(self.x * k, self.y * k)

    def dot(self, other: "Vec2") -> QuadNum:
        return self.x * other.x + self.y * other.y

    def cross(self, other: "Vec2") -> QuadNum:
        return self.x * other.y - self.y * other.x

    def norm_sq(self) -> QuadNum:
        return self.dot(self)

    def is_zero(self) -> bool:
        return self.x.is_zero() and self.y.is_zero()

    def __str__(self) -> str:
        return f"({self.x}, {self.y})"


def vec(x: _Raw, y: _Raw) -> Vec2:
    return Vec2(QuadNum.of(x), QuadNum.of(y))


ZERO_VEC = vec(0, 0)


@dataclass(frozen=True)
class Mat2:
    """2x2 matrix over Q(sqrt3)."""

    m11: QuadNum
    m12: QuadNum
    m21: QuadNum
    m22: QuadNum

    def __post_init__(self):
        for f in ("m11", "m12", "m21", "m22"):
            object.__setattr__(self, f, QuadNum.of(getattr(self, f)))

    @staticmethod
    def identity() -> "Mat2":
        return Mat2(QuadNum(1), QuadNum(0), QuadNum(0), QuadNum(1))

    def __add__(self, other: "Mat2") -> "Mat2":
        return Mat2(self.m11 + other.m11, self.m12 + other.m12,
                    self.m21 + other.m21, self.m22 + other.m22)

    def __sub__(self, other: "Mat2") -> "Mat2":
        return Mat2(self.m11 - other.m11, self.m12 - other.m12,
                    self.m21 - other.m21, self.m22 - other.m22)

    def __neg__(self) -> "Mat2":
        return Mat2(-self.m11, -self.m12, -self.m21, -self.m22)

    def __mul__(self, other):
        if isinstance(other, Mat2):
            return Mat2(
                self.m11 * other.m11 + self.m12 * other.m21,
                self.m11 * other.m12 + self.m12 * other.m22,
                self.m21 * other.m11 + self.m22 * other.m21,
                self.m21 * other.m12 + self.m22 * other.m22,
            )
        if isinstance(other, Vec2):
            return Vec2(self.m11 * other.x + self.m12 * other.y,
                        self.m21 * other.x + self.m22 * other.y)
        return NotImplemented

    def transpose(self) -> "Mat2":
        return Mat2(self.m11, self.m21, self.m12, self.m22)

    def det(self) -> QuadNum:
        return self.m11 * self.m22 - self.m12 * self.m21

    def inverse(self) -> "Mat2":
        d = self.det()
        if d.is_zero():
            raise ZeroDivisionError("singular matrix")
        return Mat2(self.m22 / d, -self.m12 / d, -self.m21 / d, self.m11 / d)

    def __pow__(self, k: int) -> "Mat2":
        if k < 0:
            return self.inverse() ** (-k)
        out = Mat2.identity()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def is_identity(self) -> bool:
        return self == Mat2.identity()

    def is_orthogonal(self) -> bool:
        return (self.transpose() * self).is_identity()

    def __str__(self) -> str:
        return f"[[{self.m11}, {self.m12}], [{self.m21}, {self.m22}]]"


def mat(m11, m12, m21, m22) -> Mat2:
    return Mat2(QuadNum.of(m11), QuadNum.of(m12), QuadNum.of(m21), QuadNum.of(m22))


IDENTITY_MAT = Mat2.identity()


def rotation_order(m: Mat2, cap: int = 6) -> int:
    """Least k <= cap with m^k = I; error beyond (crystallographic restriction)."""
    if m.is_identity():
        return 1
    p = m
    for k in range(2, cap + 1):
        p = p * m
        if p.is_identity():
            return k
    raise NonCrystallographicError(f"rotation order exceeds {cap}: {m}")


def reflection_axis_direction(m: Mat2) -> Vec2:
    """Canonical +1 eigenvector of an orthogonal matrix with det -1."""
    if not m.m12.is_zero():
        d = Vec2(m.m12, QuadNum(1) - m.m11)
    elif (m.m11 - 1).is_zero():
        d = vec(1, 0)
    else:
        d = vec(0, 1)
    return _canonical_direction(d)


def _canonical_direction(d: Vec2) -> Vec2:
    # scale so the first nonzero coordinate is 1 (deterministic equality)
    if not d.x.is_zero():
        return Vec2(QuadNum(1), d.y / d.x)
    if d.y.is_zero():
        raise ValueError("zero direction")
    return Vec2(QuadNum(0), QuadNum(1))


@dataclass(frozen=True)
class Isometry:
    """Affine map x |-> linear*x + trans with orthogonal linear part."""

    linear: Mat2
    trans: Vec2

    def __post_init__(self):
        if not self.linear.is_orthogonal():
            raise ValueError(f"linear part is not orthogonal: {self.linear}")
        d = self.linear.det()
        if d != QuadNum.of(1) and d != QuadNum.of(-1):
            raise ValueError("determinant is not +-1")

    @staticmethod
    def identity() -> "Isometry":
        return Isometry(IDENTITY_MAT, ZERO_VEC)

    @staticmethod
    def translation(v: Vec2) -> "Isometry":
        return Isometry(IDENTITY_MAT, v)

    def apply(self, v: Vec2) -> Vec2:
        return self.linear * v + self.trans

    def __mul__(self, other: "Isometry") -> "Isometry":
        """Composition self o other (apply `other` first)."""
        if not isinstance(other, Isometry):
            return NotImplemented
        return Isometry(self.linear * other.linear,
                        self.linear * other.trans + self.trans)

    def inverse(self) -> "Isometry":
        inv = self.linear.inverse()
        return Isometry(inv, -(inv * self.trans))

    def __pow__(self, k: int) -> "Isometry":
        if k < 0:
            return self.inverse() ** (-k)
        out = Isometry.identity()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def is_identity(self) -> bool:
        return self.linear.is_identity() and self.trans.is_zero()

    def __str__(self) -> str:
        return f"Isometry(linear={self.linear}, trans={self.trans})"


def compose(f: Isometry, g: Isometry) -> Isometry:
    """f o g, i.e. x |-> f(g(x))."""
    return f * g


# --------------------------------------------------------------------------
# classification into geometric types


@dataclass(frozen=True)
class Identity:
    pass


@dataclass(frozen=True)
class Translation:
    vector: Vec2


@dataclass(frozen=True)
class Rotation:
    center: Vec2
    order: int


@dataclass(frozen=True)
class Reflection:
    point: Vec2
    direction: Vec2


@dataclass(frozen=True)
class Glide:
    point: Vec2
    direction: Vec2
    vector: Vec2


IsoClass = Identity | Translation | Rotation | Reflection | Glide


def _foot_of_perpendicular(point: Vec2, direction: Vec2) -> Vec2:
    # closest point to the origin on the line {point + t*direction}
    t = point.dot(direction) / direction.dot(direction)
    return point - direction.scale(t)


def classify_isometry(f: Isometry) -> IsoClass:
    """Exact geometric type of f, with canonical axis/center data.

    Axes are reported by the foot of the perpendicular from the origin plus a
    direction normalised so its first nonzero coordinate is 1; rotation order
    is the least k <= 6 with linear^k = I.
    """
    m = f.linear
    if m.is_identity():
        if f.trans.is_zero():
            return Identity()
        return Translation(f.trans)
    if m.det() == QuadNum.of(1):
        order = rotation_order(m)
        center = (IDENTITY_MAT - m).inverse() * f.trans
        return Rotation(center, order)
    # det -1: reflection iff f o f is the identity, else glide
    square = f * f
    direction = reflection_axis_direction(m)
    if square.trans.is_zero():
        point = _foot_of_perpendicular(f.trans.scale(Fraction(1, 2)), direction)
        return Reflection(point, direction)
    glide_vector = square.trans.scale(Fraction(1, 2))
    raw_point = ((IDENTITY_MAT - m) * f.trans).scale(Fraction(1, 4))
    point = _foot_of_perpendicular(raw_point, direction)
    return Glide(point, direction, glide_vector)


_ROTATION_COS_SIN = {
    2: (Fraction(-1), Fraction(0)),
    3: (Fraction(-1, 2), None),  # sin = sqrt3/2
    4: (Fraction(0), Fraction(1)),
    6: (Fraction(1, 2), None),
}


def rotation_matrix(order: int) -> Mat2:
    """Counterclockwise rotation by 2*pi/order, order in {2, 3, 4, 6}."""
    if order not in _ROTATION_COS_SIN:
        raise NonCrystallographicError(f"no crystallographic rotation of order {order}")
    c, s = _ROTATION_COS_SIN[order]
    s_qn = QuadNum.of(s) if s is not None else QuadNum(0, Fraction(1, 2))
    c_qn = QuadNum.of(c)
    return Mat2(c_qn, -s_qn, s_qn, c_qn)


def reflection_matrix(direction: Vec2) -> Mat2:
    """Reflection across the line through the origin with the given direction."""
    n = direction.dot(direction)
    if n.is_zero():
        raise ValueError("zero direction")
    dx, dy = direction.x, direction.y
    return Mat2((dx * dx - dy * dy) / n, (dx * dy * 2) / n,
                (dx * dy * 2) / n, (dy * dy - dx * dx) / n)


def reconstruct(c: IsoClass) -> Isometry:
    """Build the canonical isometry carrying the class data of c.

    classify_isometry(reconstruct(c)) == c for any canonical IsoClass value.
    """
    if isinstance(c, Identity):
        return Isometry.identity()
    if isinstance(c, Translation):
        return Isometry.translation(c.vector)
    if isinstance(c, Rotation):
        m = rotation_matrix(c.order)
        return Isometry(m, (IDENTITY_MAT - m) * c.center)
    if isinstance(c, Reflection):
        m = reflection_matrix(c.direction)
        return Isometry(m, (IDENTITY_MAT - m) * c.point)
    if isinstance(c, Glide):
        m = reflection_matrix(c.direction)
        return Isometry(m, (IDENTITY_MAT - m) * c.point + c.vector)
    raise TypeError(f"not an IsoClass: {c!r}")


def fixed_point(f: Isometry) -> Vec2:
    """The unique fixed point of a rotation; error for any other type."""
    kind = classify_isometry(f)
    if not isinstance(kind, Rotation):
        raise NoFixedPointError(f"no unique fixed point: {type(kind).__name__}")
    return kind.center
