"""The seventeen plane crystallographic groups with exact isometry
representations, translation-lattice extraction, the full classification
decision tree, orientation double covers, and orbifold Euler characteristics.

Each model carries a presentation, a faithful representation of its
generators by exact isometries, and a pair of words whose images span the
translation lattice; all of that is machine-checked at construction time.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterable, Mapping, NamedTuple

from .cosetenum import CosetTable, InvariantError, todd_coxeter
from .exactgeom import (IDENTITY_MAT, Isometry, Mat2, QuadNum, Vec2,
                        classify_isometry, mat, reflection_axis_direction,
                        rotation_order, Translation, vec)
from .fpgroup import Presentation, SignHom, Word
from .lattice import Lattice2, integer_lattice_basis


class UnknownModelError(LookupError):
    """Name does not denote one of the seventeen plane groups."""


class UnknownSignatureError(LookupError):
    """Name does not denote one of the seventeen Euclidean 2-orbifolds."""


class Names(NamedTuple):
    thurston: str
    conway: str
    crystallographic: str


@dataclass(frozen=True)
class OrbifoldSignature:
    """Closed Euclidean 2-orbifold: underlying space, cone points, corner
    reflectors, orientability, reflector-boundary flag, and standard names."""

    orientable: bool
    has_boundary_reflector: bool
    underlying: str
    cone_orders: tuple[int, ...]
    corner_orders: tuple[int, ...]
    names: Names = Names("", "", "")
    note: str = ""

    def __post_init__(self):
        if self.corner_orders and not self.has_boundary_reflector:
            raise ValueError("corner reflectors need a boundary reflector")

    def __str__(self) -> str:
        return self.names.thurston or self._ad_hoc_name()

    def _ad_hoc_name(self) -> str:
        cones = ",".join(str(c) for c in self.cone_orders)
        return f"{self.underlying}({cones})"


_UNDERLYING_CHI = {
    "sphere": Fraction(2),
    "torus": Fraction(0),
    "klein_bottle": Fraction(0),
    "projective_plane": Fraction(1),
    "disk": Fraction(1),
    "annulus": Fraction(0),
    "moebius": Fraction(0),
}


def euler_characteristic(sig: OrbifoldSignature) -> Fraction:
    """Orbifold Euler characteristic
    chi(underlying) - sum(1 - 1/a_i) - (1/2) sum(1 - 1/b_j)."""
    chi = _UNDERLYING_CHI[sig.underlying]
    for a in sig.cone_orders:
        chi -= 1 - Fraction(1, a)
    for b in sig.corner_orders:
        chi -= Fraction(1, 2) * (1 - Fraction(1, b))
    return chi


def _sig(orient, refl, underlying, cones, corners, thurston, conway, cryst, note=""):
    return OrbifoldSignature(orient, refl, underlying, tuple(cones), tuple(corners),
                             Names(thurston, conway, cryst), note)


#: the seventeen Euclidean 2-orbifold types, keyed by crystallographic name
SIGNATURES: dict[str, OrbifoldSignature] = {
    "p1": _sig(True, False, "torus", (), (), "T2", "o", "p1"),
    "p2": _sig(True, False, "sphere", (2, 2, 2, 2), (), "S2(2,2,2,2)", "2222", "p2"),
    "p3": _sig(True, False, "sphere", (3, 3, 3), (), "S2(3,3,3)", "333", "p3"),
    "p4": _sig(True, False, "sphere", (2, 4, 4), (), "S2(2,4,4)", "442", "p4"),
    "p6": _sig(True, False, "sphere", (2, 3, 6), (), "S2(2,3,6)", "632", "p6"),
    "pm": _sig(False, True, "annulus", (), (), "T_R", "**", "pm"),
    "pg": _sig(False, False, "klein_bottle", (), (), "K2", "xx", "pg"),
    "cm": _sig(False, True, "moebius", (), (), "K_R", "*x", "cm"),
    "pmm": _sig(False, True, "disk", (), (2, 2, 2, 2), "D2(;2,2,2,2)", "*2222", "pmm"),
    "pmg": _sig(False, True, "disk", (2, 2), (), "D2(2,2;R)", "22*", "pmg",
                note="also listed as '(2;2;)' in some sources (likely a typo)"),
    "pgg": _sig(False, False, "projective_plane", (2, 2), (), "RP2(2,2)", "22x", "pgg"),
    "cmm": _sig(False, True, "disk", (2,), (2, 2), "D2(2;2,2)", "2*22", "cmm"),
    "p4m": _sig(False, True, "disk", (), (2, 4, 4), "D2(;2,4,4)", "*442", "p4m"),
    "p4g": _sig(False, True, "disk", (4,), (2,), "D2(4;2)", "4*2", "p4g"),
    "p3m1": _sig(False, True, "disk", (), (3, 3, 3), "D2(;3,3,3)", "*333", "p3m1"),
    "p31m": _sig(False, True, "disk", (3,), (3,), "D2(3;3)", "3*3", "p31m"),
    "p6m": _sig(False, True, "disk", (), (2, 3, 6), "D2(;2,3,6)", "*632", "p6m"),
}

MODEL_NAMES = tuple(SIGNATURES)


def _alias_map() -> dict[str, str]:
    aliases: dict[str, str] = {}
    for cryst, sig in SIGNATURES.items():
        for label in (cryst, sig.names.thurston, sig.names.conway):
            aliases[label.lower().replace(" ", "")] = cryst
    aliases["t^2"] = "p1"
    aliases["tr"] = aliases["t_r"]
    aliases["kr"] = aliases["k_r"]
    aliases["k^2"] = "pg"
    aliases["(2;2;)"] = "pmg"  # garbled source form recorded as an alias
    return aliases


_ALIASES = _alias_map()


def signature_by_name(name: str) -> OrbifoldSignature:
    """Look up a signature by crystallographic, Thurston-style or orbifold
    name (case-insensitive)."""
    key = name.lower().replace(" ", "")
    if key not in _ALIASES:
        raise UnknownSignatureError(f"unknown 2-orbifold name {name!r}")
    return SIGNATURES[_ALIASES[key]]


def crystallographic_name(name: str) -> str:
    key = name.lower().replace(" ", "")
    if key not in _ALIASES:
        raise UnknownModelError(f"unknown plane-group name {name!r}")
    return _ALIASES[key]


# --------------------------------------------------------------------------
# exact matrices used by the models

_H = Fraction(1, 2)
_RT3_H = QuadNum(0, _H)          # sqrt3/2
_RT3 = QuadNum(0, 1)

ROT_CCW_60 = mat(_H, -_RT3_H, _RT3_H, _H)
ROT_CW_60 = mat(_H, _RT3_H, -_RT3_H, _H)
ROT_CCW_90 = mat(0, -1, 1, 0)
ROT_CW_90 = mat(0, 1, -1, 0)
ROT_CCW_120 = mat(-_H, -_RT3_H, _RT3_H, -_H)
ROT_CW_120 = mat(-_H, _RT3_H, -_RT3_H, -_H)
ROT_180 = mat(-1, 0, 0, -1)

MIRROR_X = mat(1, 0, 0, -1)       # across the x-axis
MIRROR_Y = mat(-1, 0, 0, 1)       # across the y-axis
MIRROR_DIAG = mat(0, 1, 1, 0)     # across y = x
MIRROR_60 = mat(-_H, _RT3_H, _RT3_H, _H)     # across the 60-degree line
MIRROR_120 = mat(-_H, -_RT3_H, -_RT3_H, _H)  # across the 120-degree line


def _iso(linear: Mat2, tx=0, ty=0) -> Isometry:
    return Isometry(linear, vec(tx, ty))


def _halfturn(px, py) -> Isometry:
    p = vec(px, py)
    return Isometry(ROT_180, p + p)


def _mirror_through(linear: Mat2, px, py) -> Isometry:
    p = vec(px, py)
    return Isometry(linear, p - linear * p)


# --------------------------------------------------------------------------
# model groups


@dataclass(frozen=True)
class ModelGroup:
    presentation: Presentation
    rep: tuple[Isometry, ...]                 # one image per generator
    translation_words: tuple[Word, Word]
    signature: OrbifoldSignature

    def image(self, gen_index: int) -> Isometry:
        return self.rep[gen_index - 1]

    def evaluate(self, w: Word) -> Isometry:
        out = Isometry.identity()
        for letter in w.letters:
            g = self.rep[abs(letter) - 1]
            out = out * (g if letter > 0 else g.inverse())
        return out

    def translation_images(self) -> tuple[Vec2, Vec2]:
        return (self.evaluate(self.translation_words[0]).trans,
                self.evaluate(self.translation_words[1]).trans)

    def lattice(self) -> Lattice2:
        v1, v2 = self.translation_images()
        return Lattice2(v1, v2)

    def validate(self) -> None:
        for rel in self.presentation.relators:
            if not self.evaluate(rel).is_identity():
                raise InvariantError(
                    f"relator {self.presentation.spell(rel)} does not act trivially "
                    f"in model {self.presentation.name}")
        images = [self.evaluate(w) for w in self.translation_words]
        for img in images:
            if not isinstance(classify_isometry(img), Translation):
                raise InvariantError("translation word image is not a translation")
        if images[0].trans.cross(images[1].trans).is_zero():
            raise InvariantError("translation images are linearly dependent")


def _build(name, gens, relators, images, twords) -> ModelGroup:
    pres = Presentation(name, tuple(gens), tuple(Word(tuple(r)) for r in relators))
    model = ModelGroup(pres, tuple(images),
                       (Word(tuple(twords[0])), Word(tuple(twords[1]))),
                       SIGNATURES[name])
    model.validate()
    return model


def _model_p1():
    return _build(
        "p1", ["t", "u"], [(1, 2, -1, -2)],
        [_iso(IDENTITY_MAT, 1, 0), _iso(IDENTITY_MAT, 0, 1)],
        [(1,), (2,)])


def _model_p2():
    # four half-turns with product 1 (corners of half a unit cell)
    return _build(
        "p2", ["w", "x", "y", "z"],
        [(1, 1), (2, 2), (3, 3), (4, 4), (1, 2, 3, 4)],
        [_halfturn(0, 0), _halfturn(_H, 0), _halfturn(_H, _H), _halfturn(0, _H)],
        [(2, 1), (4, 1)])


def _model_pm():
    return _build(
        "pm", ["s", "z", "t"],
        [(1, 1), (2, 2), (1, 3, -1, -3), (2, 3, -2, -3)],
        [_iso(MIRROR_X), _iso(MIRROR_X, 0, 1), _iso(IDENTITY_MAT, 1, 0)],
        [(3,), (2, 1)])


def _model_pg():
    # Klein-bottle group: vertical translation a, horizontal glide b
    return _build(
        "pg", ["a", "b"], [(1, 2, 1, -2)],
        [_iso(IDENTITY_MAT, 0, 1), _iso(MIRROR_X, _H, 0)],
        [(2, 2), (1,)])


def _model_cm():
    return _build(
        "cm", ["s", "p", "q"],
        [(1, 1), (2, 3, -2, -3), (1, 2, -1, -3)],
        [_iso(MIRROR_X), _iso(IDENTITY_MAT, _H, _H), _iso(IDENTITY_MAT, _H, -_H)],
        [(2,), (3,)])


def _model_pmm():
    # reflection group of the rectangle [0,1/2] x [0,1/2]
    return _build(
        "pmm", ["p", "q", "r", "s"],
        [(1, 1), (2, 2), (3, 3), (4, 4),
         (1, 2, 1, 2), (2, 3, 2, 3), (3, 4, 3, 4), (4, 1, 4, 1)],
        [_iso(MIRROR_Y), _iso(MIRROR_X), _iso(MIRROR_Y, 1, 0), _iso(MIRROR_X, 0, 1)],
        [(3, 1), (4, 2)])


def _model_pmg():
    return _build(
        "pmg", ["r", "g", "t"],
        [(1, 1), (2, 3, -2, 3), (1, 2, -1, 2), (1, 3, -1, 3)],
        [_iso(ROT_180), _iso(MIRROR_X, _H, 0), _iso(IDENTITY_MAT, 0, 1)],
        [(2, 2), (3,)])


def _model_pgg():
    return _build(
        "pgg", ["r", "g", "v"],
        [(1, 1), (2, 3, -2, 3), (1, 2, -1, 2, 3), (1, 3, -1, 3)],
        [_iso(ROT_180), _iso(MIRROR_X, _H, _H), _iso(IDENTITY_MAT, 0, 1)],
        [(2, 2), (3,)])


def _model_cmm():
    return _build(
        "cmm", ["x", "y", "p", "q"],
        [(1, 1), (2, 2), (1, 2, 1, 2), (3, 4, -3, -4),
         (1, 3, -1, -4), (1, 4, -1, -3), (2, 3, -2, 4), (2, 4, -2, 3)],
        [_iso(MIRROR_X), _iso(MIRROR_Y),
         _iso(IDENTITY_MAT, _H, _H), _iso(IDENTITY_MAT, _H, -_H)],
        [(3,), (4,)])


def _model_p3():
    return _build(
        "p3", ["x", "y"],
        [(1, 1, 1), (2, 2, 2), (1, 2, 1, 2, 1, 2)],
        [_iso(ROT_CW_120), Isometry(ROT_CW_120, Vec2(QuadNum.of(_H), _RT3_H))],
        [(2, -1), (-2, 1)])


def _model_p4():
    # order-4 rotation about (1,0); half-turn about (1/2,0)
    return _build(
        "p4", ["c", "d"],
        [(1, 1, 1, 1), (2, 2), (1, 2, 1, 2, 1, 2, 1, 2)],
        [_iso(ROT_CW_90, 1, 1), _iso(ROT_180, 1, 0)],
        [(1, 1, -2), (1, -2, 1)])


def _model_p4m():
    # reflection group of the (pi/4, pi/2, pi/4) triangle
    return _build(
        "p4m", ["p", "q", "r"],
        [(1, 1), (2, 2), (3, 3),
         (1, 2, 1, 2, 1, 2, 1, 2), (2, 3, 2, 3, 2, 3, 2, 3), (3, 1, 3, 1)],
        [_iso(MIRROR_X), _iso(MIRROR_DIAG), _iso(MIRROR_Y, 1, 0)],
        [(3, 2, 1, 2), (2, 3, 2, 1)])


def _model_p4g():
    return _build(
        "p4g", ["c", "s", "u", "v"],
        [(1, 1, 1, 1), (2, 2), (1, 2, 1, 2, -4), (3, 4, -3, -4),
         (1, 3, -1, -4), (1, 4, -1, 3), (2, 3, -2, -4), (2, 4, -2, -3)],
        [_iso(ROT_CCW_90), _mirror_through(MIRROR_DIAG, _H, 0),
         _iso(IDENTITY_MAT, 1, 0), _iso(IDENTITY_MAT, 0, 1)],
        [(3,), (4,)])


def _model_p3m1():
    # reflection group of the equilateral triangle (0,0), (1,0), (1/2, rt3/2)
    return _build(
        "p3m1", ["p", "q", "r"],
        [(1, 1), (2, 2), (3, 3),
         (1, 2, 1, 2, 1, 2), (2, 3, 2, 3, 2, 3), (3, 1, 3, 1, 3, 1)],
        [_iso(MIRROR_X), _iso(MIRROR_60), _mirror_through(MIRROR_120, 1, 0)],
        [(2, 3, -2, -1), (1, 2, 2, 3, -2, -1, -2, -1)])


def _model_p31m():
    return _build(
        "p31m", ["x", "p", "u", "v"],
        [(1, 1, 1), (2, 2), (2, 1, 2, 1), (3, 4, -3, -4),
         (1, 3, -1, 4), (1, 4, -1, 4, -3), (2, 3, -2, -3), (2, 4, -2, 4, -3)],
        [_iso(ROT_CW_120), _iso(MIRROR_X),
         _iso(IDENTITY_MAT, 1, 0), Isometry(IDENTITY_MAT, Vec2(QuadNum.of(_H), _RT3_H))],
        [(3,), (4,)])


def _model_p6():
    return _build(
        "p6", ["a", "b"],
        [(1,) * 6, (2,) * 3, (1, 2, 1, 2)],
        [_iso(ROT_CW_60), Isometry(ROT_CW_120, Vec2(QuadNum.of(_H), _RT3_H))],
        [(2, -1, -1), (-2, 1, 1)])


def _model_p6m():
    # mirrors of the (pi/2, pi/3, pi/6) triangle, right angle at the origin:
    # a = y-axis leg, c = x-axis leg, b = hypotenuse through (1/2, 0)
    return _build(
        "p6m", ["a", "b", "c"],
        [(1, 1), (2, 2), (3, 3),
         (1, 2) * 6, (2, 3) * 3, (3, 1) * 2],
        [_iso(MIRROR_Y), _mirror_through(MIRROR_120, _H, 0), _iso(MIRROR_X)],
        [(1, 2, 1, 2, -1, -2, -1, 3), (1, 2, 1, 2, 1, 2, -1, -2, -1, 3, -2, -1)])


_BUILDERS = {
    "p1": _model_p1, "p2": _model_p2, "pm": _model_pm, "pg": _model_pg,
    "cm": _model_cm, "pmm": _model_pmm, "pmg": _model_pmg, "pgg": _model_pgg,
    "cmm": _model_cmm, "p3": _model_p3, "p4": _model_p4, "p4m": _model_p4m,
    "p4g": _model_p4g, "p3m1": _model_p3m1, "p31m": _model_p31m,
    "p6": _model_p6, "p6m": _model_p6m,
}


@lru_cache(maxsize=None)
def model(name: str) -> ModelGroup:
    """The standard model of a plane group, accepted by any of its names."""
    return _BUILDERS[crystallographic_name(name)]()


# --------------------------------------------------------------------------
# subgroups of a model


class SubgroupHandle:
    """A finite-index subgroup of a model group, held as a coset table with
    cached lattice, point-group and affine-class data."""

    def __init__(self, model_group: ModelGroup, table: CosetTable):
        if table.parent != model_group.presentation:
            raise ValueError("table does not belong to this model")
        self.model = model_group
        self.table = table

    @property
    def index(self) -> int:
        return self.table.index

    @cached_property
    def schreier_images(self) -> tuple[Isometry, ...]:
        return tuple(self.model.evaluate(w) for w in self.table.schreier_generators())

    @cached_property
    def point_group(self) -> tuple[Mat2, ...]:
        """Closure of the linear parts of the subgroup generators."""
        seen: dict[Mat2, None] = {IDENTITY_MAT: None}
        frontier = [IDENTITY_MAT]
        gens = [iso.linear for iso in self.schreier_images]
        while frontier:
            nxt = []
            for m in frontier:
                for g in gens:
                    prod = m * g
                    if prod not in seen:
                        seen[prod] = None
                        nxt.append(prod)
            frontier = nxt
        out = tuple(seen)
        if len(out) > 12:
            raise InvariantError("point group larger than 12")
        return out

    @cached_property
    def lattice(self) -> Lattice2:
        return translation_lattice(self)

    @cached_property
    def lattice_index(self) -> int:
        return self.lattice.index_in(self.model.lattice())

    @cached_property
    def classes(self) -> tuple[tuple[Mat2, Vec2], ...]:
        """The finite quotient (subgroup mod its translation lattice) as pairs
        (linear part, canonical translation representative)."""
        lat = self.lattice
        for m in self.point_group:
            if not (lat.contains(m * lat.b1) and lat.contains(m * lat.b2)):
                raise InvariantError("point group does not preserve the lattice")
        items: dict[tuple[Mat2, Vec2], None] = {}
        identity = (IDENTITY_MAT, lat.reduce_mod(vec(0, 0)))
        items[identity] = None
        gens = [(iso.linear, lat.reduce_mod(iso.trans)) for iso in self.schreier_images]
        frontier = list(items)
        for g in gens:
            if g not in items:
                items[g] = None
                frontier.append(g)
        while frontier:
            nxt = []
            for (m1, v1) in frontier:
                for (m2, v2) in gens:
                    prod = (m1 * m2, lat.reduce_mod(m1 * v2 + v1))
                    if prod not in items:
                        items[prod] = None
                        nxt.append(prod)
            frontier = nxt
        out = tuple(items)
        if len(out) != len(self.point_group):
            raise InvariantError("affine class count differs from point group order")
        return out


def subgroup(model_group: ModelGroup, words: Iterable[Word],
             max_cosets: int | None = None) -> SubgroupHandle:
    table = todd_coxeter(model_group.presentation, tuple(words), max_cosets)
    return SubgroupHandle(model_group, table)


def whole_group(model_group: ModelGroup) -> SubgroupHandle:
    gens = [Word((i,)) for i in range(1, model_group.presentation.ngens + 1)]
    return subgroup(model_group, gens)


def sign_kernel(model_group: ModelGroup,
                hom: SignHom | Mapping[str, int]) -> SubgroupHandle:
    """Index-2 subgroup cut out by a sign homomorphism (given directly or as a
    partial {generator name: sign} mapping, unnamed generators meaning +1)."""
    if not isinstance(hom, SignHom):
        pres = model_group.presentation
        signs = [1] * pres.ngens
        for gen_name, s in hom.items():
            signs[pres.gen_index(gen_name) - 1] = s
        hom = SignHom(pres, tuple(signs))
    if not hom.holds():
        raise ValueError("sign assignment violates a relator")
    return subgroup(model_group, hom.kernel_words())


def translation_lattice(handle: SubgroupHandle) -> Lattice2:
    """Lattice of the translations lying in the subgroup.

    Membership of t1^i t2^j is tested through the coset table for
    0 <= i, j <= index; the found exponent pairs generate the full exponent
    sublattice because its index divides the coset count.
    """
    k = handle.index
    t1, t2 = handle.model.translation_words
    found = []
    for i in range(k + 1):
        for j in range(k + 1):
            if (i or j) and handle.table.contains(t1 ** i * t2 ** j):
                found.append((i, j))
    (a, b), (zero, g) = integer_lattice_basis(found)
    assert zero == 0
    v1, v2 = handle.model.translation_images()
    basis1 = v1.scale(a) + v2.scale(b)
    basis2 = v2.scale(g)
    lat = Lattice2(basis1, basis2)
    if lat.index_in(handle.model.lattice()) > k:
        raise InvariantError("translation lattice index exceeds the coset count")
    return lat


def point_group(handle: SubgroupHandle) -> tuple[Mat2, ...]:
    return handle.point_group


# --------------------------------------------------------------------------
# classification


def _scalar_along(v: Vec2, u: Vec2) -> QuadNum:
    # v = scalar * u for parallel vectors
    if not u.x.is_zero():
        return v.x / u.x
    return v.y / u.y


def _primitive_lattice_vector_along(lat: Lattice2, direction: Vec2) -> Vec2:
    """Primitive vector of the rank-1 group (lattice intersect R*direction)."""
    from math import gcd

    c1 = lat.b1.cross(direction)
    c2 = lat.b2.cross(direction)
    # solve i*c1 + j*c2 = 0 over the rational coordinates of Q(sqrt3)
    eqs = [(c1.a, c2.a), (c1.b, c2.b)]
    eqs = [e for e in eqs if e != (0, 0)]
    if not eqs:
        raise InvariantError("direction parallel to both basis vectors")
    x, y = eqs[0]
    for (x2, y2) in eqs[1:]:
        if x * y2 != y * x2:
            raise InvariantError("no lattice vector along the axis direction")
    num_i, num_j = -y, x
    den = num_i.denominator * num_j.denominator
    i0 = int(num_i * den)
    j0 = int(num_j * den)
    d = gcd(i0, j0)
    i0, j0 = i0 // d, j0 // d
    u0 = lat.b1.scale(i0) + lat.b2.scale(j0)
    if u0.cross(direction) != QuadNum.of(0):
        raise InvariantError("primitive vector computation failed")
    return u0


def _class_has_reflection(m: Mat2, v: Vec2, lat: Lattice2) -> bool:
    """Whether some lattice translate of (m, v) is a true reflection, i.e.
    (m + I)v lies in (m + I)Lattice."""
    mi = m + IDENTITY_MAT
    w = mi * v
    if w.is_zero():
        return True
    direction = reflection_axis_direction(m)
    u0 = _primitive_lattice_vector_along(lat, direction)
    coeffs = []
    for b in (lat.b1, lat.b2):
        c = _scalar_along(mi * b, u0) if not (mi * b).is_zero() else QuadNum.of(0)
        if not c.is_integer():
            raise InvariantError("lattice image is not an integer multiple")
        coeffs.append(int(c.a))
    from math import gcd
    g = gcd(coeffs[0], coeffs[1])
    if g == 0:
        return False
    gamma = _scalar_along(w, u0)
    return (gamma / g).is_integer()


def _rotation_center_reps(m: Mat2, v: Vec2, lat: Lattice2) -> list[Vec2]:
    """Centers of the rotations (m, v + lambda), one per lattice class; there
    are det(I - m) of them."""
    im = IDENTITY_MAT - m
    d = im.det()
    if not d.is_integer() or int(d.a) <= 0:
        raise InvariantError("det(I - rotation) is not a positive integer")
    count = int(d.a)
    inv = im.inverse()
    reps: list[Vec2] = []
    seen: set[Vec2] = set()
    for i in range(count):
        for j in range(count):
            lam = lat.b1.scale(i) + lat.b2.scale(j)
            center = lat.reduce_mod(inv * (v + lam))
            if center not in seen:
                seen.add(center)
                reps.append(center)
    if len(reps) != count:
        raise InvariantError("wrong number of rotation-center classes")
    return reps


def _point_on_some_mirror(p: Vec2, neg_classes, lat: Lattice2) -> bool:
    # p is fixed by a reflection in the group iff some class admits a lattice
    # translate fixing p (a det -1 isometry with a fixed point is a reflection)
    for (m, v) in neg_classes:
        if lat.contains((IDENTITY_MAT - m) * p - v):
            return True
    return False


def _exists_glide_off_mirrors(neg_classes, lat: Lattice2) -> bool:
    for (m, v) in neg_classes:
        mi = m + IDENTITY_MAT
        for i in range(2):
            for j in range(2):
                t = v + lat.b1.scale(i) + lat.b2.scale(j)
                if (mi * t).is_zero():
                    continue  # a reflection, not a glide
                axis_point = ((IDENTITY_MAT - m) * t).scale(Fraction(1, 4))
                on_mirror = any(
                    m2 == m and lat.contains((IDENTITY_MAT - m) * axis_point - v2)
                    for (m2, v2) in neg_classes)
                if not on_mirror:
                    return True
    return False


def _centers_of_order(handle: SubgroupHandle, order: int) -> list[Vec2]:
    out = []
    for (m, v) in handle.classes:
        if m.det() == QuadNum.of(1) and not m.is_identity() and rotation_order(m) == order:
            out.extend(_rotation_center_reps(m, v, handle.lattice))
    return out


def crystallographic_type(handle: SubgroupHandle) -> str:
    """Crystallographic type of the subgroup, via the standard decision tree."""
    lat = handle.lattice
    classes = handle.classes
    rotations = [m for m in handle.point_group
                 if m.det() == QuadNum.of(1) and not m.is_identity()]
    n = max((rotation_order(m) for m in rotations), default=1)
    neg = [(m, v) for (m, v) in classes if m.det() == QuadNum.of(-1)]
    if not neg:
        return {1: "p1", 2: "p2", 3: "p3", 4: "p4", 6: "p6"}[n]
    mirrors = [(m, v) for (m, v) in neg if _class_has_reflection(m, v, lat)]
    if n == 1:
        if not mirrors:
            return "pg"
        return "cm" if _exists_glide_off_mirrors(neg, lat) else "pm"
    if n == 2:
        if not mirrors:
            return "pgg"
        directions = {reflection_axis_direction(m) for (m, _) in mirrors}
        if len(directions) == 1:
            return "pmg"
        centers = _centers_of_order(handle, 2)
        all_on = all(_point_on_some_mirror(c, neg, lat) for c in centers)
        return "pmm" if all_on else "cmm"
    if n == 3:
        if not mirrors:
            raise InvariantError("3-fold group with glides but no mirrors")
        centers = _centers_of_order(handle, 3)
        all_on = all(_point_on_some_mirror(c, neg, lat) for c in centers)
        return "p3m1" if all_on else "p31m"
    if n == 4:
        if not mirrors:
            raise InvariantError("4-fold group with glides but no mirrors")
        centers = _centers_of_order(handle, 4)
        all_on = all(_point_on_some_mirror(c, neg, lat) for c in centers)
        return "p4m" if all_on else "p4g"
    if n == 6:
        if not mirrors:
            raise InvariantError("6-fold group with glides but no mirrors")
        return "p6m"
    raise InvariantError(f"impossible rotation order {n}")


def model_point_group(model_group: ModelGroup) -> tuple[Mat2, ...]:
    """Point group of the whole model: closure of the generator linear parts."""
    seen: dict[Mat2, None] = {IDENTITY_MAT: None}
    frontier = [IDENTITY_MAT]
    gens = [iso.linear for iso in model_group.rep]
    while frontier:
        nxt = []
        for m in frontier:
            for g in gens:
                prod = m * g
                if prod not in seen:
                    seen[prod] = None
                    nxt.append(prod)
        frontier = nxt
    return tuple(seen)


def classify(handle: SubgroupHandle) -> OrbifoldSignature:
    """Euclidean 2-orbifold signature of the subgroup's quotient orbifold."""
    sig = SIGNATURES[crystallographic_type(handle)]
    # index identity: [G:H] * |P(H)| = [Lat_G : Lat_H] * |P(G)|
    whole = len(model_point_group(handle.model))
    if handle.index * len(handle.point_group) != handle.lattice_index * whole:
        raise InvariantError("index identity violated")
    return sig


def orientation_double_cover(model_group: ModelGroup) -> tuple[SubgroupHandle, OrbifoldSignature]:
    """The orientation-preserving subgroup with its classification.

    For an orientable model this is the whole group; otherwise it is the
    kernel of the determinant sign map, which contains every translation.
    """
    signs = tuple(1 if iso.linear.det() == QuadNum.of(1) else -1
                  for iso in model_group.rep)
    if all(s == 1 for s in signs):
        handle = whole_group(model_group)
        return handle, model_group.signature
    hom = SignHom(model_group.presentation, signs)
    if not hom.holds():
        raise InvariantError("determinant sign map violates a relator")
    handle = subgroup(model_group, hom.kernel_words())
    for w in model_group.translation_words:
        if hom.evaluate(w) != 1 or not handle.table.contains(w):
            raise InvariantError("translation fails to lift to the double cover")
    return handle, classify(handle)
