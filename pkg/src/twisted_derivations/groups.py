"""Exact discrete groups and their endomorphisms.

Two kinds of group are supported: finite groups stored as validated
Cayley tables, and the discrete Heisenberg group over the integers in
triple normal form, where (a, b, c) stands for the unitriangular matrix

    [[1, a, c],
     [0, 1, b],
     [0, 0, 1]].

These are the only kinds the rest of the library needs; there is no
general finitely-presented-group machinery here.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import permutations

from .errors import (
    GroupMismatch,
    NoIdentity,
    NoInverse,
    NotAHomomorphism,
    NotAssociative,
    NotLatinSquare,
    UnsupportedParameter,
)

# Group axioms are checked exhaustively up to this order and on a fixed
# deterministic sample of triples above it.
ASSOCIATIVITY_EXHAUSTIVE_LIMIT = 64
ASSOCIATIVITY_SAMPLES = 10_000

MAX_FINITE_ORDER = 1024


def _heis_mul(p, q):
    return (p[0] + q[0], p[1] + q[1], p[2] + q[2] + p[0] * q[1])


def _heis_inv(p):
    a, b, c = p
    return (-a, -b, a * b - c)


def _heis_pow(p, n):
    # p^n = (n*a, n*b, n*c + C(n,2)*a*b); valid for negative n as well.
    a, b, c = p
    return (n * a, n * b, n * c + (n * (n - 1) // 2) * a * b)


def _heis_conj(x, g):
    # x g x^{-1}; only the (a, b) part of x enters.
    return (g[0], g[1], g[2] + x[0] * g[1] - x[1] * g[0])


def _heis_sort_key(p):
    a, b, c = p
    return (abs(c), abs(a), abs(b), a, b, c)


class GroupElement:
    """An element of a specific Group.

    payload is an index into the Cayley table for finite groups and an
    integer triple (a, b, c) for the Heisenberg group.
    """

    __slots__ = ("group", "payload")

    def __init__(self, group: "Group", payload):
        self.group = group
        self.payload = payload

    def __eq__(self, other):
        return (
            isinstance(other, GroupElement)
            and self.group is other.group
            and self.payload == other.payload
        )

    def __hash__(self):
        return hash((id(self.group), self.payload))

    def __mul__(self, other):
        return self.group.multiply(self, other)

    def inverse(self) -> "GroupElement":
        return self.group.inverse(self)

    def __repr__(self):
        return f"<{self.group.label(self)}>"


class Group:
    """A validated group. Construct via make_finite_group or builtin_group.

    Immutable after construction; elements compare equal only within the
    same Group instance.
    """

    def __init__(self, kind, name, cayley=None, identity_index=None,
                 inverse_table=None, labels=None, generator_payloads=None):
        self.kind = kind  # "finite" or "heisenberg_Z"
        self.name = name
        self.cayley = cayley
        self.identity_index = identity_index
        self.inverse_table = inverse_table
        self.labels = labels
        self.order = len(cayley) if cayley is not None else None
        self._elements = None
        if self.kind == "finite":
            self._elements = [GroupElement(self, i) for i in range(self.order)]
        self.generators = [self.element(p) for p in generator_payloads]
        if labels is not None:
            self._label_index = {lab: i for i, lab in enumerate(labels)}
        else:
            self._label_index = None

    # -- element handling ------------------------------------------------

    def element(self, payload) -> GroupElement:
        if self.kind == "finite":
            if not isinstance(payload, int) or not 0 <= payload < self.order:
                raise GroupMismatch(
                    f"{payload!r} is not an element index of {self.name}",
                    group=self.name)
            return self._elements[payload]
        payload = tuple(int(v) for v in payload)
        if len(payload) != 3:
            raise GroupMismatch(
                f"{payload!r} is not a Heisenberg triple", group=self.name)
        return GroupElement(self, payload)

    def _check(self, g: GroupElement):
        if g.group is not self:
            raise GroupMismatch(
                f"element of {g.group.name} used in {self.name}",
                expected=self.name, got=g.group.name)

    def identity(self) -> GroupElement:
        if self.kind == "finite":
            return self._elements[self.identity_index]
        return GroupElement(self, (0, 0, 0))

    def multiply(self, g: GroupElement, h: GroupElement) -> GroupElement:
        self._check(g)
        self._check(h)
        if self.kind == "finite":
            return self._elements[self.cayley[g.payload][h.payload]]
        return GroupElement(self, _heis_mul(g.payload, h.payload))

    def inverse(self, g: GroupElement) -> GroupElement:
        self._check(g)
        if self.kind == "finite":
            return self._elements[self.inverse_table[g.payload]]
        return GroupElement(self, _heis_inv(g.payload))

    def power(self, g: GroupElement, n: int) -> GroupElement:
        self._check(g)
        if self.kind == "heisenberg_Z":
            return GroupElement(self, _heis_pow(g.payload, n))
        result = self.identity()
        base = g if n >= 0 else self.inverse(g)
        for _ in range(abs(n)):
            result = self.multiply(result, base)
        return result

    def elements(self):
        """All elements, in canonical order. Finite groups only."""
        if self.kind != "finite":
            raise GroupMismatch(
                f"{self.name} is infinite; use ball(radius)", group=self.name)
        return list(self._elements)

    def ball(self, radius: int):
        """Words of length <= radius in the generators and their inverses.

        Finite groups return the full element list regardless of radius.
        The Heisenberg ball is sorted by (|c|, |a|, |b|, a, b, c) so that
        enumeration order is reproducible.
        """
        if self.kind == "finite":
            return self.elements()
        letters = [g.payload for g in self.generators]
        letters += [_heis_inv(p) for p in letters]
        seen = {(0, 0, 0)}
        frontier = [(0, 0, 0)]
        for _ in range(radius):
            new = []
            for p in frontier:
                for l in letters:
                    q = _heis_mul(p, l)
                    if q not in seen:
                        seen.add(q)
                        new.append(q)
            frontier = new
        return [GroupElement(self, p) for p in sorted(seen, key=_heis_sort_key)]

    def sort_key(self, g: GroupElement):
        self._check(g)
        if self.kind == "finite":
            return g.payload
        return _heis_sort_key(g.payload)

    # -- naming and serialization ----------------------------------------

    def label(self, g: GroupElement) -> str:
        if self.kind == "finite":
            if self.labels is not None:
                return self.labels[g.payload]
            return str(g.payload)
        return "[{},{},{}]".format(*g.payload)

    def element_to_json(self, g: GroupElement):
        """Index for finite groups, [a, b, c] list for Heisenberg."""
        self._check(g)
        if self.kind == "finite":
            return g.payload
        return list(g.payload)

    def element_from_json(self, obj) -> GroupElement:
        """Accepts an index, an [a, b, c] list, or a builtin label."""
        if isinstance(obj, str) and self._label_index is not None:
            if obj in self._label_index:
                return self._elements[self._label_index[obj]]
        if self.kind == "finite":
            if isinstance(obj, bool) or not isinstance(obj, int):
                if (isinstance(obj, (list, tuple)) and len(obj) == 3
                        and self._label_index is not None):
                    lab = "[{},{},{}]".format(*(int(v) for v in obj))
                    if lab in self._label_index:
                        return self._elements[self._label_index[lab]]
                raise GroupMismatch(
                    f"cannot interpret {obj!r} as an element of {self.name}",
                    group=self.name)
            return self.element(obj)
        if not isinstance(obj, (list, tuple)) or len(obj) != 3:
            raise GroupMismatch(
                f"cannot interpret {obj!r} as an element of {self.name}",
                group=self.name)
        return self.element(obj)

    def __repr__(self):
        return f"Group({self.name})"


def _validate_cayley(cayley):
    order = len(cayley)
    if order == 0:
        raise NotLatinSquare("empty table")
    for i, row in enumerate(cayley):
        if len(row) != order:
            raise NotLatinSquare(f"row {i} has length {len(row)}, expected {order}", row=i)
        if sorted(row) != list(range(order)):
            raise NotLatinSquare(f"row {i} is not a permutation of 0..{order - 1}", row=i)
    for j in range(order):
        col = [cayley[i][j] for i in range(order)]
        if sorted(col) != list(range(order)):
            raise NotLatinSquare(f"column {j} is not a permutation of 0..{order - 1}", column=j)

    identity_index = None
    for e in range(order):
        if all(cayley[e][x] == x == cayley[x][e] for x in range(order)):
            identity_index = e
            break
    if identity_index is None:
        raise NoIdentity("no two-sided identity in table")

    inverse_table = [None] * order
    for g in range(order):
        for h in range(order):
            if cayley[g][h] == identity_index == cayley[h][g]:
                inverse_table[g] = h
                break
        if inverse_table[g] is None:
            raise NoInverse(f"element {g} has no two-sided inverse", element=g)

    if order <= ASSOCIATIVITY_EXHAUSTIVE_LIMIT:
        triples = (
            (a, b, c)
            for a in range(order) for b in range(order) for c in range(order)
        )
    else:
        rng = random.Random(0)
        triples = (
            (rng.randrange(order), rng.randrange(order), rng.randrange(order))
            for _ in range(ASSOCIATIVITY_SAMPLES)
        )
    for a, b, c in triples:
        if cayley[cayley[a][b]][c] != cayley[a][cayley[b][c]]:
            raise NotAssociative(
                f"({a}*{b})*{c} != {a}*({b}*{c})", triple=[a, b, c])

    return identity_index, inverse_table


def _closure_of(cayley, identity_index, seeds):
    reached = {identity_index}
    frontier = [identity_index]
    while frontier:
        nxt = []
        for w in frontier:
            for s in seeds:
                p = cayley[w][s]
                if p not in reached:
                    reached.add(p)
                    nxt.append(p)
        frontier = nxt
    return reached


def _greedy_generators(cayley, identity_index):
    # Smallest index not yet generated is adjoined, repeatedly. Deterministic.
    order = len(cayley)
    generators = []
    closure = {identity_index}
    while len(closure) < order:
        candidate = min(i for i in range(order) if i not in closure)
        generators.append(candidate)
        closure = _closure_of(cayley, identity_index, generators)
    return generators


def make_finite_group(cayley_table, name=None, labels=None) -> Group:
    """Validate a Cayley table and wrap it as a Group.

    Entries are element indices; table[i][j] is the index of g_i * g_j.
    Raises NotLatinSquare, NoIdentity, NoInverse or NotAssociative with a
    witness in the payload when the table fails a group axiom.
    """
    cayley = [list(row) for row in cayley_table]
    if len(cayley) > MAX_FINITE_ORDER:
        raise UnsupportedParameter(
            f"order {len(cayley)} exceeds the supported bound {MAX_FINITE_ORDER}",
            order=len(cayley))
    identity_index, inverse_table = _validate_cayley(cayley)
    generator_payloads = _greedy_generators(cayley, identity_index)
    if not generator_payloads:
        generator_payloads = [identity_index]  # trivial group still needs one
    return Group(
        "finite",
        name or f"finite_order_{len(cayley)}",
        cayley=cayley,
        identity_index=identity_index,
        inverse_table=inverse_table,
        labels=labels,
        generator_payloads=generator_payloads,
    )


def _cyclic_tables(n):
    cayley = [[(i + j) % n for j in range(n)] for i in range(n)]
    labels = ["e"] + ["g" if k == 1 else f"g^{k}" for k in range(1, n)]
    return cayley, labels


def _dihedral_tables(n):
    # Element (i, j) = r^i s^j with s r = r^{-1} s; index i + j*n.
    def mul(p, q):
        i1, j1 = p
        i2, j2 = q
        sign = -1 if j1 else 1
        return ((i1 + sign * i2) % n, j1 ^ j2)

    def idx(p):
        return p[0] + p[1] * n

    elems = [(i, j) for j in (0, 1) for i in range(n)]
    cayley = [[idx(mul(p, q)) for q in elems] for p in elems]
    labels = []
    for j in (0, 1):
        for i in range(n):
            rot = "e" if i == 0 else ("r" if i == 1 else f"r^{i}")
            if j == 0:
                labels.append(rot)
            else:
                labels.append("s" if i == 0 else f"{rot}s")
    return cayley, labels


def _symmetric_tables(n):
    elems = sorted(permutations(range(n)))
    index = {p: i for i, p in enumerate(elems)}
    cayley = [
        [index[tuple(p[q[x]] for x in range(n))] for q in elems]
        for p in elems
    ]
    labels = ["".join(str(v) for v in p) for p in elems]
    return cayley, labels


def _quaternion_tables():
    # Units as (axis, sign), axis 0 meaning 1 and axes 1,2,3 meaning i,j,k.
    def unit_mul(a1, a2):
        if a1 == 0:
            return a2, 1
        if a2 == 0:
            return a1, 1
        if a1 == a2:
            return 0, -1
        third = 6 - a1 - a2
        if (a1, a2) in ((1, 2), (2, 3), (3, 1)):
            return third, 1
        return third, -1

    def idx(axis, sign):
        return 2 * axis + (0 if sign > 0 else 1)

    elems = [(axis, sign) for axis in range(4) for sign in (1, -1)]
    cayley = []
    for a1, s1 in elems:
        row = []
        for a2, s2 in elems:
            axis, s = unit_mul(a1, a2)
            row.append(idx(axis, s * s1 * s2))
        cayley.append(row)
    labels = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
    return cayley, labels


def _heisenberg_mod_tables(n):
    elems = [(a, b, c) for a in range(n) for b in range(n) for c in range(n)]
    index = {p: i for i, p in enumerate(elems)}

    def mul(p, q):
        r = _heis_mul(p, q)
        return (r[0] % n, r[1] % n, r[2] % n)

    cayley = [[index[mul(p, q)] for q in elems] for p in elems]
    labels = ["[{},{},{}]".format(*p) for p in elems]
    return cayley, labels


_HEISENBERG_Z = None


def builtin_group(family: str, param: int | None = None) -> Group:
    """Canonical construction of the builtin families.

    family is one of cyclic, dihedral, symmetric, quaternion8,
    heisenberg_mod, heisenberg_Z; param is the family parameter where one
    applies.
    """
    if family == "heisenberg_Z":
        if param is not None:
            raise UnsupportedParameter("heisenberg_Z takes no parameter", param=param)
        # one shared instance: elements compare by group identity, and
        # heisenberg_Z carries no mutable state
        global _HEISENBERG_Z
        if _HEISENBERG_Z is None:
            _HEISENBERG_Z = Group("heisenberg_Z", "heisenberg_Z",
                                  generator_payloads=[(1, 0, 0), (0, 1, 0)])
        return _HEISENBERG_Z
    if family == "quaternion8":
        if param is not None and param != 8:
            raise UnsupportedParameter("quaternion8 takes no parameter", param=param)
        cayley, labels = _quaternion_tables()
        return make_finite_group(cayley, name="quaternion8", labels=labels)
    if param is None:
        raise UnsupportedParameter(f"{family} needs a parameter", family=family)
    n = int(param)
    if family == "cyclic":
        if not 1 <= n <= MAX_FINITE_ORDER:
            raise UnsupportedParameter(f"cyclic order {n} out of range", param=n)
        cayley, labels = _cyclic_tables(n)
        return make_finite_group(cayley, name=f"cyclic_{n}", labels=labels)
    if family == "dihedral":
        if not 1 <= n or 2 * n > MAX_FINITE_ORDER:
            raise UnsupportedParameter(f"dihedral parameter {n} out of range", param=n)
        cayley, labels = _dihedral_tables(n)
        return make_finite_group(cayley, name=f"dihedral_{n}", labels=labels)
    if family == "symmetric":
        if not 1 <= n <= 5:
            raise UnsupportedParameter(
                f"symmetric groups are supported for n <= 5, got {n}", param=n)
        cayley, labels = _symmetric_tables(n)
        return make_finite_group(cayley, name=f"symmetric_{n}", labels=labels)
    if family == "heisenberg_mod":
        if not 1 <= n or n ** 3 > MAX_FINITE_ORDER:
            raise UnsupportedParameter(
                f"heisenberg_mod parameter {n} out of range", param=n)
        cayley, labels = _heisenberg_mod_tables(n)
        return make_finite_group(cayley, name=f"heisenberg_mod_{n}", labels=labels)
    raise UnsupportedParameter(f"unknown builtin family {family!r}", family=family)


class Endomorphism:
    """A group endomorphism, applied with __call__.

    Finite groups store the total element map and the homomorphism
    property is validated exhaustively. On heisenberg_Z the map is given
    by generator images and extended through the normal form
    g = x^a y^b z^(c - a*b); validation checks the presentation relations
    [x, [x, y]] = [y, [x, y]] = e, a weaker guarantee than the finite
    case.
    """

    def __init__(self, group, table=None, gen_images=None,
                 is_automorphism=False, inner_witness=None):
        self.group = group
        self.table = table
        self.gen_images = gen_images
        self.is_automorphism = is_automorphism
        self.inner_witness = inner_witness
        self._memo = {}
        if gen_images is not None and group.kind == "heisenberg_Z":
            px, py = gen_images
            self._phi_x = px
            self._phi_y = py
            self._phi_z = _heis_mul(_heis_mul(px, py),
                                    _heis_mul(_heis_inv(px), _heis_inv(py)))

    def __call__(self, g: GroupElement) -> GroupElement:
        self.group._check(g)
        if self.table is not None:
            return self.group._elements[self.table[g.payload]]
        if self.inner_witness is not None:
            return GroupElement(
                self.group, _heis_conj(self.inner_witness.payload, g.payload))
        p = g.payload
        if p not in self._memo:
            a, b, c = p
            img = _heis_mul(
                _heis_mul(_heis_pow(self._phi_x, a), _heis_pow(self._phi_y, b)),
                _heis_pow(self._phi_z, c - a * b))
            self._memo[p] = img
        return GroupElement(self.group, self._memo[p])

    def generator_images(self):
        return [self(g) for g in self.group.generators]

    def spec_json(self):
        if self.inner_witness is not None:
            return {"inner": self.group.element_to_json(self.inner_witness)}
        return {"images": {
            self.group.label(g): self.group.element_to_json(self(g))
            for g in self.group.generators
        }}

    def __repr__(self):
        if self.inner_witness is not None:
            return f"Endomorphism(inner by {self.group.label(self.inner_witness)})"
        images = ", ".join(
            f"{self.group.label(g)}->{self.group.label(self(g))}"
            for g in self.group.generators)
        return f"Endomorphism({images})"


def identity_endomorphism(group: Group) -> Endomorphism:
    if group.kind == "finite":
        return Endomorphism(group, table=list(range(group.order)),
                            is_automorphism=True)
    return Endomorphism(group, gen_images=[g.payload for g in group.generators],
                        is_automorphism=True)


def make_endomorphism(group: Group, images) -> Endomorphism:
    """Extend generator images to an endomorphism and validate it.

    images is a list aligned with group.generators, or a dict keyed by
    the generators. Raises NotAHomomorphism with a witness pair when the
    extension fails to be multiplicative.
    """
    if isinstance(images, dict):
        missing = [g for g in group.generators if g not in images]
        if missing:
            raise NotAHomomorphism(
                f"missing image for generator {group.label(missing[0])}",
                generator=group.element_to_json(missing[0]))
        images = [images[g] for g in group.generators]
    images = list(images)
    if len(images) != len(group.generators):
        raise NotAHomomorphism(
            f"expected {len(group.generators)} generator images, got {len(images)}")
    for img in images:
        group._check(img)

    if group.kind == "heisenberg_Z":
        px, py = (img.payload for img in images)
        phi_z = _heis_mul(_heis_mul(px, py), _heis_mul(_heis_inv(px), _heis_inv(py)))
        for gen_payload, name in ((px, "x"), (py, "y")):
            lhs = _heis_mul(gen_payload, phi_z)
            rhs = _heis_mul(phi_z, gen_payload)
            if lhs != rhs:
                raise NotAHomomorphism(
                    f"image of [{name}, [x, y]] is not trivial",
                    relation=name)
        det = px[0] * py[1] - px[1] * py[0]
        return Endomorphism(group, gen_images=[px, py],
                            is_automorphism=abs(det) == 1)

    table = [None] * group.order
    e = group.identity_index
    table[e] = e
    frontier = [e]
    gen_payloads = [g.payload for g in group.generators]
    img_payloads = [img.payload for img in images]
    while frontier:
        nxt = []
        for w in frontier:
            for s, s_img in zip(gen_payloads, img_payloads):
                p = group.cayley[w][s]
                if table[p] is None:
                    table[p] = group.cayley[table[w]][s_img]
                    nxt.append(p)
        frontier = nxt
    for g in range(group.order):
        for h in range(group.order):
            if table[group.cayley[g][h]] != group.cayley[table[g]][table[h]]:
                raise NotAHomomorphism(
                    "phi(g*h) != phi(g)*phi(h)",
                    witness=[group.element_to_json(group._elements[g]),
                             group.element_to_json(group._elements[h])])
    return Endomorphism(group, table=table,
                        is_automorphism=len(set(table)) == group.order)


def inner_endomorphism(group: Group, x: GroupElement) -> Endomorphism:
    """The automorphism g -> x g x^{-1}."""
    group._check(x)
    if group.kind == "heisenberg_Z":
        gens = [GroupElement(group, _heis_conj(x.payload, g.payload))
                for g in group.generators]
        return Endomorphism(group, gen_images=[g.payload for g in gens],
                            is_automorphism=True, inner_witness=x)
    xi = x.payload
    x_inv = group.inverse_table[xi]
    table = [group.cayley[group.cayley[xi][g]][x_inv] for g in range(group.order)]
    return Endomorphism(group, table=table, is_automorphism=True,
                        inner_witness=x)


def all_automorphisms(group: Group):
    """Every automorphism of a finite group, in deterministic order.

    Brute force over generator-image tuples; fine at the orders this
    library supports.
    """
    if group.kind != "finite":
        raise UnsupportedParameter("automorphism enumeration needs a finite group")
    found = []
    gens = group.generators
    candidates = [group.elements()] * len(gens)

    def rec(i, chosen):
        if i == len(gens):
            try:
                endo = make_endomorphism(group, chosen)
            except NotAHomomorphism:
                return
            if endo.is_automorphism:
                found.append(endo)
            return
        for img in candidates[i]:
            rec(i + 1, chosen + [img])

    rec(0, [])
    return found


@dataclass(frozen=True)
class HeisenbergParams:
    """Witness entries for the inner pair sigma, tau on the Heisenberg group.

    sigma is conjugation by (sigma_a, sigma_b, sigma_c) and tau by
    (sigma_a, sigma_b, tau_c): the two witnesses share their (a, b)
    entries and differ only in the c entry, so the two maps coincide
    pointwise (conjugation in the Heisenberg group ignores the witness c
    entry) while remaining distinct as witnesses.
    """

    sigma_a: int
    sigma_b: int
    sigma_c: int
    tau_c: int

    def witnesses(self, group: Group):
        if group.kind != "heisenberg_Z":
            raise UnsupportedParameter("HeisenbergParams needs heisenberg_Z")
        s = group.element((self.sigma_a, self.sigma_b, self.sigma_c))
        t = group.element((self.sigma_a, self.sigma_b, self.tau_c))
        return s, t

    def endomorphisms(self, group: Group):
        s, t = self.witnesses(group)
        return inner_endomorphism(group, s), inner_endomorphism(group, t)
