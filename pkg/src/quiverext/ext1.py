"""First extension groups as cocycles modulo coboundaries.

For representations V (the quotient side) and U (the sub side), an arrow
cochain assigns to each arrow a matrix V_source -> U_target.  Extending
a cochain Z to paths by the product rule

    Z(a1...an) = sum_i  U(a1..a_{i-1}) Z(a_i) V(a_{i+1}..a_n)

and to relation elements linearly, the cocycles are the cochains killing
every relation element, the coboundaries are the cochains of the form
U_a h_src - h_tgt V_a for a vertex cochain h, and the quotient is the
space of extension classes of V by U.  Each cocycle Z has an explicit
middle term: the block upper-triangular representation [[U, Z], [0, V]].
"""

from __future__ import annotations

from dataclasses import dataclass

from .linalg import (
    Matrix,
    QuotientSpace,
    SubspaceBasis,
    coordinates_in_basis,
    kernel_basis,
    linear_map_matrix,
    row_space_basis,
    vec_is_zero,
)
from .quiver import Path, QuiverError, RelationElement
from .rep import Representation, VertexCochain


class ArrowCochain:
    """Per-arrow matrices source_rep -> target_rep across each arrow."""

    def __init__(self, source: Representation, target: Representation, mats: dict):
        self.source = source
        self.target = target
        self.mats = {}
        for a in source.bq.quiver.arrows:
            m = mats.get(a.name)
            if m is None:
                m = Matrix.zeros(source.field, target.dims[a.target], source.dims[a.source])
            if m.shape() != (target.dims[a.target], source.dims[a.source]):
                raise QuiverError(
                    f"arrow {a.name}: cochain block has shape {m.shape()}, "
                    f"expected {(target.dims[a.target], source.dims[a.source])}"
                )
            self.mats[a.name] = m

    @staticmethod
    def space_dim(source, target) -> int:
        return sum(target.dims[a.target] * source.dims[a.source]
                   for a in source.bq.quiver.arrows)

    def to_vector(self):
        out = []
        for a in self.source.bq.quiver.arrows:
            for row in self.mats[a.name].rows:
                out.extend(row)
        return out

    @classmethod
    def from_vector(cls, source, target, vec):
        mats = {}
        pos = 0
        for a in source.bq.quiver.arrows:
            r, c = target.dims[a.target], source.dims[a.source]
            rows = [vec[pos + i * c: pos + (i + 1) * c] for i in range(r)]
            pos += r * c
            mats[a.name] = Matrix(source.field, rows, c)
        if pos != len(vec):
            raise ValueError("vector length does not match the arrow layout")
        return cls(source, target, mats)

    @classmethod
    def zero(cls, source, target):
        return cls(source, target, {})

    def scale(self, c):
        return ArrowCochain(self.source, self.target,
                            {a: m.scale(c) for a, m in self.mats.items()})

    def add(self, other: "ArrowCochain"):
        return ArrowCochain(self.source, self.target,
                            {a: self.mats[a] + other.mats[a] for a in self.mats})


class RelationCochain:
    """Per-relation matrices source_rep -> target_rep across each relation."""

    def __init__(self, source: Representation, target: Representation, mats: dict):
        self.source = source
        self.target = target
        self.mats = {}
        for rel in source.bq.relations:
            m = mats.get(rel.name)
            if m is None:
                m = Matrix.zeros(source.field, target.dims[rel.target],
                                 source.dims[rel.source])
            if m.shape() != (target.dims[rel.target], source.dims[rel.source]):
                raise QuiverError(
                    f"relation {rel.name}: cochain block has shape {m.shape()}, "
                    f"expected {(target.dims[rel.target], source.dims[rel.source])}"
                )
            self.mats[rel.name] = m

    @staticmethod
    def space_dim(source, target) -> int:
        return sum(target.dims[r.target] * source.dims[r.source]
                   for r in source.bq.relations)

    def to_vector(self):
        out = []
        for rel in self.source.bq.relations:
            for row in self.mats[rel.name].rows:
                out.extend(row)
        return out

    @classmethod
    def from_vector(cls, source, target, vec):
        mats = {}
        pos = 0
        for rel in source.bq.relations:
            r, c = target.dims[rel.target], source.dims[rel.source]
            rows = [vec[pos + i * c: pos + (i + 1) * c] for i in range(r)]
            pos += r * c
            mats[rel.name] = Matrix(source.field, rows, c)
        if pos != len(vec):
            raise ValueError("vector length does not match the relation layout")
        return cls(source, target, mats)

    def add(self, other: "RelationCochain"):
        return RelationCochain(self.source, self.target,
                               {r: self.mats[r] + other.mats[r] for r in self.mats})

    def is_zero(self) -> bool:
        return all(m.is_zero() for m in self.mats.values())


def z_path(Z: ArrowCochain, path: Path) -> Matrix:
    """Product-rule extension of an arrow cochain to a path."""
    V, U = Z.source, Z.target
    if path.length == 0:
        return Matrix.zeros(V.field, U.dims[path.source], V.dims[path.source])
    arrows = path.arrows
    quiver = V.bq.quiver
    total = None
    for i, name in enumerate(arrows):
        head = U.eval_arrow_word(arrows[:i], quiver.arrow_map[name].target)
        tail = V.eval_arrow_word(arrows[i + 1:], path.source)
        term = head @ Z.mats[name] @ tail
        total = term if total is None else total + term
    return total


def z_rho(Z: ArrowCochain, rel: RelationElement) -> Matrix:
    """Linear extension of the product rule to a relation element."""
    V, U = Z.source, Z.target
    field = V.field
    out = Matrix.zeros(field, U.dims[rel.target], V.dims[rel.source])
    for coeff, p in rel.terms:
        out = out + z_path(Z, p).scale(field.of_fraction(coeff))
    return out


def is_cocycle(Z: ArrowCochain) -> bool:
    return all(z_rho(Z, rel).is_zero() for rel in Z.source.bq.relations)


def z_space(V: Representation, U: Representation) -> SubspaceBasis:
    """Basis of the cocycle space: cochains killing every relation element."""
    field = V.field
    dom = ArrowCochain.space_dim(V, U)
    codom = RelationCochain.space_dim(V, U)

    def apply(vec):
        Z = ArrowCochain.from_vector(V, U, vec)
        rc = RelationCochain(V, U, {rel.name: z_rho(Z, rel) for rel in V.bq.relations})
        return rc.to_vector()

    system = linear_map_matrix(field, dom, codom, apply)
    return kernel_basis(system)


def coboundary(h: VertexCochain) -> ArrowCochain:
    """The cochain a |-> U_a h_src - h_tgt V_a attached to a vertex cochain."""
    V, U = h.source, h.target
    mats = {}
    for a in V.bq.quiver.arrows:
        mats[a.name] = U.mats[a.name] @ h.mats[a.source] - h.mats[a.target] @ V.mats[a.name]
    return ArrowCochain(V, U, mats)


def b_space(V: Representation, U: Representation) -> SubspaceBasis:
    """Basis of the coboundary space inside the arrow-cochain coordinates."""
    field = V.field
    dom = VertexCochain.space_dim(V, U)
    rows = []
    for j in range(dom):
        e = [field.zero] * dom
        e[j] = field.one
        h = VertexCochain.from_vector(V, U, e)
        rows.append(coboundary(h).to_vector())
    m = Matrix(field, rows, ArrowCochain.space_dim(V, U))
    return row_space_basis(m)


@dataclass
class Ext1Class:
    """An extension class held as a canonical coordinate vector."""

    space: "ExtSpace1"
    coords: tuple

    @property
    def is_zero(self) -> bool:
        return all(self.space.field.is_zero(c) for c in self.coords)

    def __eq__(self, other):
        return isinstance(other, Ext1Class) and self.space is other.space \
            and self.coords == other.coords

    def representative(self) -> ArrowCochain:
        field = self.space.field
        vec = [field.zero] * self.space.z.ambient_dim
        for c, bvec in zip(self.coords, self.space.z.vectors):
            if not field.is_zero(c):
                vec = [field.add(x, field.mul(c, y)) for x, y in zip(vec, bvec)]
        return ArrowCochain.from_vector(self.space.source, self.space.target, vec)


class ExtSpace1:
    """Cocycles, coboundaries, and their quotient for a pair (V, U)."""

    def __init__(self, V: Representation, U: Representation):
        self.source = V
        self.target = U
        self.field = V.field
        self.z = z_space(V, U)
        self.b = b_space(V, U)
        coords = []
        for bvec in self.b.vectors:
            c = coordinates_in_basis(self.z, bvec)
            if c is None:
                raise QuiverError("coboundary outside the cocycle space")
            coords.append(c)
        self.quotient = QuotientSpace(self.field, self.z.dim,
                                      SubspaceBasis(self.field, self.z.dim, coords))
        self.dim = self.quotient.dim

    def class_of(self, Z: ArrowCochain) -> Ext1Class:
        vec = Z.to_vector()
        coords = coordinates_in_basis(self.z, vec)
        if coords is None:
            raise QuiverError("cochain is not a cocycle for this pair")
        return Ext1Class(self, tuple(self.quotient.reduce(coords)))

    def zero_class(self) -> Ext1Class:
        return Ext1Class(self, tuple([self.field.zero] * self.z.dim))

    def basis_cocycles(self):
        return [ArrowCochain.from_vector(self.source, self.target, v)
                for v in self.z.vectors]


def ext1(V: Representation, U: Representation) -> ExtSpace1:
    return ExtSpace1(V, U)


def is_split(Z: ArrowCochain) -> bool:
    """True when the cocycle is a coboundary (its extension splits)."""
    V, U = Z.source, Z.target
    if not is_cocycle(Z):
        raise QuiverError("is_split expects a cocycle")
    b = b_space(V, U)
    quot = QuotientSpace(V.field, ArrowCochain.space_dim(V, U), b)
    return quot.contains(Z.to_vector())


def middle_term(Z: ArrowCochain):
    """The extension realized by a cocycle, with its canonical maps.

    Returns (W, incl, proj): W places U in the upper blocks and V in the
    lower, each arrow acting by [[U_a, Z_a], [0, V_a]]; incl embeds U,
    proj maps onto V, and incl -> W -> proj is exact.
    """
    V, U = Z.source, Z.target
    if not is_cocycle(Z):
        raise QuiverError("middle_term expects a cocycle (a relation check failed)")
    field = V.field
    bq = V.bq
    dims = {x: U.dims[x] + V.dims[x] for x in bq.quiver.vertices}
    mats = {}
    for a in bq.quiver.arrows:
        ua, za, va = U.mats[a.name], Z.mats[a.name], V.mats[a.name]
        rows = []
        for i in range(ua.nrows):
            rows.append(list(ua.rows[i]) + list(za.rows[i]))
        for i in range(va.nrows):
            rows.append([field.zero] * ua.ncols + list(va.rows[i]))
        mats[a.name] = Matrix(field, rows, ua.ncols + va.ncols)
    W = Representation(bq, field, dims, mats, check=True)
    incl_mats, proj_mats = {}, {}
    for x in bq.quiver.vertices:
        du, dv = U.dims[x], V.dims[x]
        eye_u = Matrix.identity(field, du)
        eye_v = Matrix.identity(field, dv)
        incl_rows = [list(r) for r in eye_u.rows] + [[field.zero] * du for _ in range(dv)]
        proj_rows = [[field.zero] * du + list(r) for r in eye_v.rows]
        incl_mats[x] = Matrix(field, incl_rows, du)
        proj_mats[x] = Matrix(field, proj_rows, du + dv)
    incl = VertexCochain(U, W, incl_mats)
    proj = VertexCochain(W, V, proj_mats)
    return W, incl, proj


def pushout_class(h: VertexCochain, Z: ArrowCochain,
                  target_space: ExtSpace1 | None = None) -> Ext1Class:
    """Image of [Z] under a morphism h: U -> M on the sub side.

    The image class is represented by the cochain a |-> h_tgt Z_a.
    """
    V, U = Z.source, Z.target
    if h.source != U:
        raise QuiverError("pushout: morphism must start at the cocycle's target")
    if not h.is_morphism():
        raise QuiverError("pushout expects a morphism")
    M = h.target
    mats = {a.name: h.mats[a.target] @ Z.mats[a.name] for a in V.bq.quiver.arrows}
    pushed = ArrowCochain(V, M, mats)
    space = target_space or ext1(V, M)
    return space.class_of(pushed)


def pullback_class(Z: ArrowCochain, h: VertexCochain,
                   target_space: ExtSpace1 | None = None) -> Ext1Class:
    """Image of [Z] under a morphism h: M -> V on the quotient side.

    The image class is represented by the cochain a |-> Z_a h_src.
    """
    V, U = Z.source, Z.target
    if h.target != V:
        raise QuiverError("pullback: morphism must land in the cocycle's source")
    if not h.is_morphism():
        raise QuiverError("pullback expects a morphism")
    M = h.source
    mats = {a.name: Z.mats[a.name] @ h.mats[a.source] for a in V.bq.quiver.arrows}
    pulled = ArrowCochain(M, U, mats)
    space = target_space or ext1(M, U)
    return space.class_of(pulled)
