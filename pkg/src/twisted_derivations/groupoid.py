"""The action groupoid of an endomorphism pair (sigma, tau).

Objects are the group elements; a morphism is a pair (u, v) with

    source(u, v) = sigma(v^-1) u        target(u, v) = u tau(v^-1)

so that (u, v) lies in Hom(source, target). Composition follows the
convention that for f in Hom(a, b) and g in Hom(b, c), written here in
application order as compose(f, g),

    compose((u1, v1), (u2, v2)) = (u2 tau(v1), v2 v1) in Hom(a, c).

The composability condition target(f) = source(g) reads
sigma(v2^-1) u2 = u1 tau(v1^-1), which is the connecting identity the
composition rule preserves. Connected components of the groupoid are
the (sigma, tau)-conjugacy classes; loops at an object u are indexed by
its twisted centralizer.
"""

from __future__ import annotations

from .algebra import ZERO, AlgebraElement, GaussianRational
from .derivations import DerivationTable, check_leibniz, is_sigma_tau_central
from .errors import (
    NotADerivation,
    NotComposable,
    NotSupportedForScope,
)


class Morphism:
    __slots__ = ("u", "v")

    def __init__(self, u, v):
        self.u = u
        self.v = v

    def __eq__(self, other):
        return (isinstance(other, Morphism)
                and self.u == other.u and self.v == other.v)

    def __hash__(self):
        return hash((self.u, self.v))

    def __repr__(self):
        return f"Morphism(u={self.u.group.label(self.u)}, v={self.v.group.label(self.v)})"


class ConjugacyClass:
    """The (sigma, tau)-conjugacy class of an element, possibly truncated.

    truncated is False when the listing is provably complete: always on
    finite groups, and on heisenberg_Z exactly when the element is
    certified (sigma, tau)-central, making the class a singleton.
    """

    def __init__(self, representative, elements, truncated):
        self.representative = representative
        self.elements = elements
        self.truncated = truncated

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __repr__(self):
        flag = ", truncated" if self.truncated else ""
        return f"ConjugacyClass({len(self.elements)} elements{flag})"


class SubgroupDescription:
    """A closed-form subgroup of heisenberg_Z.

    Membership of (a, b, c) is the conjunction of integer conditions
    alpha*a + beta*b = 0; the c coordinate is always free. rank is the
    torsion-free rank of the abelianization, which is what the character
    space of the subgroup has as its dimension.
    """

    def __init__(self, group, conditions, generators, rank, kind):
        self.group = group
        self.conditions = conditions
        self.generators = generators
        self.rank = rank
        self.kind = kind

    def contains(self, g) -> bool:
        self.group._check(g)
        a, b, _c = g.payload
        return all(alpha * a + beta * b == 0 for alpha, beta in self.conditions)

    def to_json(self):
        return {
            "kind": self.kind,
            "conditions": [list(cond) for cond in self.conditions],
            "generators": [self.group.element_to_json(g) for g in self.generators],
            "abelianization_rank": self.rank,
        }

    def __repr__(self):
        gens = ", ".join(self.group.label(g) for g in self.generators)
        return f"SubgroupDescription({self.kind}; generated by {gens})"


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return abs(a)


class GroupoidView:
    """Immutable query object for the groupoid of (G, sigma, tau).

    Finite groups use the full element list as scope; heisenberg_Z needs
    a truncation radius and works over the ball.
    """

    def __init__(self, group, sigma, tau, radius=None):
        self.group = group
        self.sigma = sigma
        self.tau = tau
        self.radius = radius
        if group.kind == "finite":
            self._scope = group.elements()
        else:
            if radius is None:
                raise NotSupportedForScope(
                    f"{group.name} is infinite; a truncation radius is required",
                    group=group.name)
            self._scope = group.ball(radius)
        self._scope_set = set(self._scope)

    def objects(self):
        return list(self._scope)

    # -- morphisms ---------------------------------------------------------

    def source(self, m: Morphism):
        return self.sigma(m.v.inverse()) * m.u

    def target(self, m: Morphism):
        return m.u * self.tau(m.v.inverse())

    def identity_morphism(self, a) -> Morphism:
        return Morphism(a, self.group.identity())

    def compose(self, f: Morphism, g: Morphism) -> Morphism:
        """The composite of f: a -> b followed by g: b -> c."""
        b1 = self.target(f)
        b2 = self.source(g)
        if b1 != b2:
            raise NotComposable(
                "target of the first morphism differs from source of the second",
                target_of_first=self.group.label(b1),
                source_of_second=self.group.label(b2))
        return Morphism(g.u * self.tau(f.v), g.v * f.v)

    def hom_set(self, a, b):
        """All morphisms a -> b with v in scope.

        For each v there is exactly one candidate u = sigma(v) a, since
        source(u, v) = a forces it; it belongs when the target matches.
        """
        out = []
        for v in self._scope:
            u = self.sigma(v) * a
            if u * self.tau(v.inverse()) == b:
                out.append(Morphism(u, v))
        return out

    def loops(self, a):
        return self.hom_set(a, a)

    def all_morphisms(self):
        """Every pair (u, v) over the scope; each is a valid morphism."""
        return [Morphism(u, v) for u in self._scope for v in self._scope]

    # -- classes, centralizers, center ---------------------------------------

    def conjugacy_class(self, a) -> ConjugacyClass:
        """[a] = {sigma(g^-1) a tau(g)} over g in scope."""
        group = self.group
        group._check(a)
        seen = {}
        for g in self._scope:
            g_inv = g.inverse()
            b = self.sigma(g_inv) * a * self.tau(g)
            seen[b] = True
        elements = sorted(seen, key=group.sort_key)
        if group.kind == "finite":
            truncated = False
        else:
            central, _ = is_sigma_tau_central(a, self.sigma, self.tau)
            truncated = not central
        return ConjugacyClass(a, elements, truncated)

    def components(self):
        """Partition of the scope into groupoid components.

        On a finite group these are exactly the conjugacy classes. On a
        ball scope the partition connects a to sigma(g^-1) a tau(g) for
        witnesses g in the scope whenever both endpoints are visible, so
        pieces of one infinite class can appear as separate components
        when the ball is too small to connect them.
        """
        if self.group.kind == "finite":
            classes = []
            visited = set()
            for a in self._scope:
                if a in visited:
                    continue
                cls = self.conjugacy_class(a)
                visited.update(cls.elements)
                classes.append(cls.elements)
            return classes
        parent = {a: a for a in self._scope}

        def find(x):
            while parent[x] is not x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a in self._scope:
            for g in self._scope:
                b = self.sigma(g.inverse()) * a * self.tau(g)
                if b in self._scope_set:
                    ra, rb = find(a), find(b)
                    if ra is not rb:
                        parent[rb] = ra
        buckets = {}
        for a in self._scope:
            buckets.setdefault(find(a), []).append(a)
        key = self.group.sort_key
        classes = [sorted(v, key=key) for v in buckets.values()]
        classes.sort(key=lambda cls: key(cls[0]))
        return classes

    def centralizer(self, u):
        """Z(u) = {z : sigma(z) u = u tau(z)}.

        Finite groups get the element list; heisenberg_Z with inner
        sigma, tau gets a closed-form SubgroupDescription from the
        linear membership condition on triples.
        """
        group = self.group
        group._check(u)
        if group.kind == "finite":
            return [z for z in self._scope
                    if self.sigma(z) * u == u * self.tau(z)]
        return self._heisenberg_centralizer(u)

    def _inner_witnesses(self):
        x = self.sigma.inner_witness
        y = self.tau.inner_witness
        if x is None or y is None:
            raise NotSupportedForScope(
                "closed forms on heisenberg_Z need inner sigma and tau")
        return x.payload, y.payload

    def _heisenberg_centralizer(self, u) -> SubgroupDescription:
        # sigma(z) u = u tau(z) with sigma = conj by x, tau = conj by y
        # reduces to alpha*z_a + beta*z_b = 0 on the triple of z.
        x, y = self._inner_witnesses()
        ua, ub, _uc = u.payload
        alpha = ub - x[1] + y[1]
        beta = x[0] - y[0] - ua
        group = self.group
        z_gen = group.element((0, 0, 1))
        if alpha == 0 and beta == 0:
            return SubgroupDescription(
                group, [], [group.element((1, 0, 0)), group.element((0, 1, 0)),
                            z_gen],
                rank=2, kind="heisenberg_full")
        d = _gcd(alpha, beta)
        direction = group.element((beta // d, -alpha // d, 0))
        return SubgroupDescription(
            group, [(alpha, beta)], [direction, z_gen],
            rank=2, kind="free_abelian")

    def center(self):
        """Z = {z : sigma(z) p = p tau(z) for every p}."""
        group = self.group
        if group.kind == "finite":
            out = []
            for z in self._scope:
                sz = self.sigma(z)
                tz = self.tau(z)
                if all(sz * p == p * tz for p in self._scope):
                    out.append(z)
            return out
        # with inner sigma, tau the centralizer condition at p reads
        # alpha(p)*z_a + beta(p)*z_b = 0 and alpha, beta sweep all of Z
        # as p varies, forcing z_a = z_b = 0
        self._inner_witnesses()
        return SubgroupDescription(
            group, [(1, 0), (0, 1)], [group.element((0, 0, 1))],
            rank=1, kind="free_abelian")


class Character:
    """A sparse character: finitely many morphisms carry nonzero values.

    Stored as a dict, so local finiteness holds by construction. Use
    character_from_derivation to build one with the additivity guarantee.
    """

    def __init__(self, values):
        self.values = {m: c for m, c in values.items() if c}

    def value(self, m: Morphism) -> GaussianRational:
        return self.values.get(m, ZERO)

    def items(self):
        def key(m):
            group = m.v.group
            return (group.sort_key(m.v), group.sort_key(m.u))
        return [(m, self.values[m]) for m in sorted(self.values, key=key)]

    def __repr__(self):
        return f"Character({len(self.values)} nonzero values)"


def character_from_derivation(view: GroupoidView, D: DerivationTable) -> Character:
    """Psi: the character chi(h, g) = lambda(h, g).

    Additivity on composable pairs is equivalent to the componentwise
    Leibniz rule, which is verified over the view's scope before the
    character is returned; a violation raises NotADerivation with the
    offending pair.
    """
    scope = view.objects()
    result = check_leibniz(D, pairs=[(g2, g1) for g2 in scope for g1 in scope])
    if not result["ok"]:
        g2, g1, _lhs, _rhs = result["violations"][0]
        raise NotADerivation(
            "the Leibniz rule fails, so the coefficient family is not additive",
            witness=[view.group.label(g2), view.group.label(g1)])
    values = {}
    for g in scope:
        for h, coeff in D.value(g).items():
            values[Morphism(h, g)] = coeff
    return Character(values)


def derivation_from_character(view: GroupoidView, chi: Character) -> DerivationTable:
    """Psi inverse: D(g) = sum_h chi(h, g) h.

    chi is stored sparsely, so the sum is finite for every g; this is
    the local finiteness the inversion needs.
    """
    group = view.group
    per_g = {}
    for m, coeff in chi.values.items():
        per_g.setdefault(m.v, {})[m.u] = coeff
    values = {g: AlgebraElement(group, terms) for g, terms in per_g.items()}
    for g in view.objects():
        values.setdefault(g, AlgebraElement.zero(group))
    return DerivationTable.from_table(group, view.sigma, view.tau, values)


def to_dot(view: GroupoidView) -> str:
    """Render the groupoid as a DOT digraph, one subgraph per component.

    Nodes are objects named by their canonical labels; edges are a
    spanning set of morphisms (u, v) labeled by v, discovered in
    canonical order, plus an identity loop on singleton components so
    every object carries at least one visible morphism.
    """
    group = view.group
    scope = view.objects()
    scope_set = set(scope)
    parent = {a: a for a in scope}

    def find(x):
        while parent[x] is not x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    edges = []
    for a in scope:
        for v in scope:
            u = view.sigma(v) * a
            b = u * view.tau(v.inverse())
            if b in scope_set:
                ra, rb = find(a), find(b)
                if ra is not rb:
                    parent[rb] = ra
                    edges.append((a, v, b))
    buckets = {}
    for a in scope:
        buckets.setdefault(find(a), []).append(a)
    key = group.sort_key
    components = sorted(
        (sorted(members, key=key) for members in buckets.values()),
        key=lambda cls: key(cls[0]))
    edges_by_root = {}
    for a, v, b in edges:
        edges_by_root.setdefault(find(a), []).append((a, v, b))

    lines = ["digraph groupoid {", '  node [shape=box];']
    for i, members in enumerate(components):
        root = find(members[0])
        lines.append(f"  subgraph cluster_{i} {{")
        lines.append(f'    label="component {group.label(members[0])}";')
        for a in members:
            lines.append(f'    "{group.label(a)}";')
        component_edges = edges_by_root.get(root, [])
        if not component_edges:
            e = group.identity()
            for a in members:
                lines.append(
                    f'    "{group.label(a)}" -> "{group.label(a)}" '
                    f'[label="{group.label(e)}"];')
        else:
            for a, v, b in component_edges:
                lines.append(
                    f'    "{group.label(a)}" -> "{group.label(b)}" '
                    f'[label="{group.label(v)}"];')
        lines.append("  }")
    lines.append("}")
    return "\n".join(lines) + "\n"
