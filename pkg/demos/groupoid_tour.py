"""Tour of the action groupoid attached to (G, sigma, tau).

Objects are group elements, a morphism (u, v): sigma(v^-1)u -> u tau(v^-1)
records one twisted-conjugation move, and connected components are exactly
the twisted conjugacy classes. Derivations of the group algebra become
additive characters of this groupoid, and the dictionary is lossless.
"""

from twisted_derivations import (
    GroupoidView,
    builtin_group,
    character_from_derivation,
    derivation_from_character,
    derivation_space,
    identity_endomorphism,
    inner_endomorphism,
    to_dot,
)

G = builtin_group("symmetric", 3)
sigma = inner_endomorphism(G, G.element(1))
tau = identity_endomorphism(G)
view = GroupoidView(G, sigma, tau)

print("twisted conjugacy classes:")
for cls in view.components():
    labels = [G.label(g) for g in cls]
    print(f"  [{labels[0]}] size {len(cls)}: {labels}")

a = G.element(0)
print(f"centralizer of {G.label(a)}: {[G.label(z) for z in view.centralizer(a)]}")
print(f"loops at {G.label(a)}: {len(view.loops(a))}")

# a derivation and its character, there and back
D = derivation_space(G, sigma, tau)["basis"][0]
chi = character_from_derivation(view, D)
print(f"character supported on {len(list(chi.items()))} morphisms")
assert derivation_from_character(view, chi) == D
print("round trip through the character recovered D exactly")

print()
print(to_dot(view))
