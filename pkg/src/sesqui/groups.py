"""Small finite groups, products, and crossed modules.

Catalog groups use short string names for their elements so they can be
written back out as ``group`` blocks.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations, product

from ._hashing import cached_hash
from .extensional import Fn, Group, is_homomorphism


def cyclic(n: int, name: str | None = None) -> Group:
    els = [str(k) for k in range(n)]
    return Group.from_op(name or f"Z{n}", els, lambda a, b: str((int(a) + int(b)) % n))


def _perm_group(name: str, perms: list[tuple], names: dict) -> Group:
    def op(a, b):
        pa, pb = inv_names[a], inv_names[b]
        # a applied after b
        return names[tuple(pa[pb[i]] for i in range(len(pb)))]
    inv_names = {v: k for k, v in names.items()}
    return Group.from_op(name, [names[p] for p in perms], op)


def symmetric3() -> Group:
    names = {(0, 1, 2): "e", (1, 0, 2): "s12", (2, 1, 0): "s13", (0, 2, 1): "s23",
             (1, 2, 0): "r", (2, 0, 1): "rr"}
    return _perm_group("S3", sorted(permutations(range(3))), names)


def dihedral4() -> Group:
    # (k, s) stands for r^k s^s; s r = r^-1 s
    def label(k, s):
        return ("s" if s else "") + ("r" + (str(k) if k > 1 else "") if k else "") or "e"
    els = [(k, s) for s in (0, 1) for k in range(4)]
    names = {x: label(*x) for x in els}
    # r^k s^a r^l s^b = r^(k + (-1)^a l) s^(a+b)
    def op(x, y):
        (k, a), (l, b) = back[x], back[y]
        return names[((k + (l if a == 0 else -l)) % 4, (a + b) % 2)]
    back = {v: k for k, v in names.items()}
    return Group.from_op("D4", [names[x] for x in els], op)


def quaternion8() -> Group:
    table = {  # unit products as (sign, unit)
        (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
        (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
        (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
        (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
    }
    unit_names = ["1", "i", "j", "k"]

    def name(sign, u):
        return unit_names[u] if sign > 0 else "m" + unit_names[u]

    def parse(x):
        return (-1, unit_names.index(x[1:])) if x.startswith("m") else (1, unit_names.index(x))

    def op(a, b):
        (sa, ua), (sb, ub) = parse(a), parse(b)
        s, u = table[(ua, ub)]
        return name(sa * sb * s, u)
    els = [name(s, u) for s in (1, -1) for u in range(4)]
    return Group.from_op("Q8", els, op)


def klein() -> Group:
    bits = {"e": (0, 0), "a": (1, 0), "b": (0, 1), "c": (1, 1)}
    back = {v: k for k, v in bits.items()}
    return Group.from_op("Klein", list(bits), lambda x, y: back[tuple((p + q) % 2 for p, q in zip(bits[x], bits[y]))])


def trivial(name: str = "1") -> Group:
    return Group.from_op(name, ["e"], lambda a, b: "e")


def catalog(name: str) -> Group:
    """Look up ``Zn``, ``S3``, ``D4``, ``Q8``, ``Klein`` or ``1``."""
    if name == "S3":
        return symmetric3()
    if name == "D4":
        return dihedral4()
    if name == "Q8":
        return quaternion8()
    if name in ("Klein", "V4"):
        return klein()
    if name == "1":
        return trivial()
    if name.startswith("Z") and name[1:].isdigit() and int(name[1:]) > 0:
        return cyclic(int(name[1:]))
    raise KeyError(f"unknown group {name!r}")


def direct_product(a: Group, b: Group, name: str | None = None) -> Group:
    els = list(product(a.elements, b.elements))
    return Group.from_op(name or f"{a.name}x{b.name}", els,
                         lambda p, q: (a.mul(p[0], q[0]), b.mul(p[1], q[1])))


def semidirect(x: Group, b: Group, act, name: str | None = None) -> Group:
    """``X x| B`` with ``(x1, b1)(x2, b2) = (x1 (b1 . x2), b1 b2)``."""
    els = list(product(x.elements, b.elements))
    return Group.from_op(name or f"{x.name}x|{b.name}", els,
                         lambda p, q: (x.mul(p[0], act(p[1], q[0])), b.mul(p[1], q[1])))


def is_abelian(g: Group) -> bool:
    return all(g.mul(a, b) == g.mul(b, a) for a in g.elements for b in g.elements)


@cached_hash
@dataclass(frozen=True)
class CrossedModulePresentation:
    """``d: X -> B`` with a left action of B on X by automorphisms."""
    name: str
    X: Group
    B: Group
    d: Fn
    action: dict = field(compare=False, hash=False)

    @classmethod
    def build(cls, name: str, X: Group, B: Group, d, action=None) -> "CrossedModulePresentation":
        dfn = d if isinstance(d, Fn) else Fn.of(X, B, d)
        if action is None:
            action = {(b, x): x for b in B.elements for x in X.elements}
        elif callable(action):
            action = {(b, x): action(b, x) for b in B.elements for x in X.elements}
        return cls(name, X, B, dfn, dict(action))

    def act(self, b, x):
        return self.action[(b, x)]

    def check(self) -> list[str]:
        X, B, d = self.X, self.B, self.d
        msgs = []
        if not is_homomorphism(d):
            msgs.append("d is not a homomorphism")
        for b in B.elements:
            for x in X.elements:
                if (b, x) not in self.action or self.act(b, x) not in X.index:
                    msgs.append(f"action undefined at ({b},{x})")
                    return msgs
        for x in X.elements:
            if self.act(B.unit, x) != x:
                msgs.append(f"unit does not act trivially on {x}")
        for b, b2, x in product(B.elements, B.elements, X.elements):
            if self.act(B.mul(b, b2), x) != self.act(b, self.act(b2, x)):
                msgs.append(f"action is not associative at ({b},{b2},{x})")
                break
        for b, x, x2 in product(B.elements, X.elements, X.elements):
            if self.act(b, X.mul(x, x2)) != X.mul(self.act(b, x), self.act(b, x2)):
                msgs.append(f"{b} does not act by a homomorphism")
                break
        for b, x in product(B.elements, X.elements):
            if d(self.act(b, x)) != B.conj(b, d(x)):
                msgs.append(f"d(b.x) != b d(x) b^-1 at ({b},{x})")
        for x, x2 in product(X.elements, X.elements):
            if self.act(d(x), x2) != X.conj(x, x2):
                msgs.append(f"d(x).x' != x x' x^-1 at ({x},{x2})")
        return msgs

    def __repr__(self) -> str:
        return f"CrossedModule({self.name!r})"
