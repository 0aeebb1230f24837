#!/usr/bin/env python3
"""Regenerates data/a5_fixture.txt.

Builds the A5 group data and explicit irreducible models over Q(sqrt 5)
in plain Python (fractions), independently of the C++ library:

  chi1        trivial
  chi4        permutation module on 5 points, sum-zero part (basis e_i - e_5)
  chi5        permutation module on the six 5-Sylow subgroups, sum-zero part
  chi3        chi3-isotypic part of Lambda^2(chi4), restricted to a basis
  sigma_chi3  entrywise Galois conjugate of chi3

Permutations compose as (g*h)(x) = g(h(x)).
"""

import itertools
import sys
from fractions import Fraction


class Q5:
    """a + b*sqrt(5)"""

    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        self.a = Fraction(a)
        self.b = Fraction(b)

    def __add__(self, o):
        o = lift(o)
        return Q5(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return Q5(-self.a, -self.b)

    def __sub__(self, o):
        return self + (-lift(o))

    def __rsub__(self, o):
        return lift(o) - self

    def __mul__(self, o):
        o = lift(o)
        return Q5(self.a * o.a + 5 * self.b * o.b, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def inv(self):
        n = self.a * self.a - 5 * self.b * self.b
        return Q5(self.a / n, -self.b / n)

    def __truediv__(self, o):
        return self * lift(o).inv()

    def __eq__(self, o):
        o = lift(o)
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        return hash((self.a, self.b))

    def conj(self):
        return Q5(self.a, -self.b)

    def is_zero(self):
        return self.a == 0 and self.b == 0

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        return f"{self.a}+{self.b}*r5"


def lift(x):
    return x if isinstance(x, Q5) else Q5(x)


ZERO, ONE = Q5(0), Q5(1)
PHI = Q5(Fraction(1, 2), Fraction(1, 2))
SPHI = Q5(Fraction(1, 2), Fraction(-1, 2))


def mat_zero(r, c):
    return [[ZERO] * c for _ in range(r)]


def mat_eye(n):
    m = mat_zero(n, n)
    for i in range(n):
        m[i][i] = ONE
    return m


def mat_mul(x, y):
    n, k, m = len(x), len(y), len(y[0])
    out = mat_zero(n, m)
    for i in range(n):
        for t in range(k):
            if x[i][t].is_zero():
                continue
            for j in range(m):
                if not y[t][j].is_zero():
                    out[i][j] = out[i][j] + x[i][t] * y[t][j]
    return out


def trace(m):
    t = ZERO
    for i in range(len(m)):
        t = t + m[i][i]
    return t


def rref_pivots(m):
    m = [row[:] for row in m]
    rows, cols = len(m), len(m[0])
    piv, r = [], 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if not m[i][c].is_zero()), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = m[r][c].inv()
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and not m[i][c].is_zero():
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        piv.append(c)
        r += 1
    return m, piv


def compose(g, h):
    return tuple(g[h[x]] for x in range(len(h)))


def inverse(g):
    inv = [0] * len(g)
    for x, y in enumerate(g):
        inv[y] = x
    return tuple(inv)


def from_cycles(cycles, n=5):
    img = list(range(n))
    for cyc in cycles:
        for i, x in enumerate(cyc):
            img[x - 1] = cyc[(i + 1) % len(cyc)] - 1
    return tuple(img)


def enumerate_group(gens):
    ident = tuple(range(len(gens[0])))
    seen = {ident: ()}
    queue = [ident]
    while queue:
        g = queue.pop(0)
        for s, gen in enumerate(gens):
            h = compose(g, gen)
            if h not in seen:
                seen[h] = seen[g] + (s,)
                queue.append(h)
    return seen


A = from_cycles([(1, 2, 3, 4, 5)])
B = from_cycles([(3, 4, 5)])
GENS = [A, B]
ELEMENTS = enumerate_group(GENS)
assert len(ELEMENTS) == 60

CLASS_REPS = [
    from_cycles([]),
    from_cycles([(1, 2), (3, 4)]),
    from_cycles([(1, 2, 3)]),
    from_cycles([(1, 2, 3, 4, 5)]),
    from_cycles([(1, 2, 3, 5, 4)]),
]
CLASS_NAMES = ["()", "(1,2)(3,4)", "(1,2,3)", "(1,2,3,4,5)", "(1,2,3,5,4)"]


def conj_class(g):
    return frozenset(compose(compose(h, g), inverse(h)) for h in ELEMENTS)


CLASSES = [conj_class(r) for r in CLASS_REPS]
assert sum(len(c) for c in CLASSES) == 60


def class_of(g):
    for i, c in enumerate(CLASSES):
        if g in c:
            return i
    raise ValueError(g)


def mat_of(gen_mats, g):
    m = mat_eye(len(gen_mats[0]))
    for s in ELEMENTS[g]:
        m = mat_mul(m, gen_mats[s])
    return m


def deleted_perm(perm_gens):
    n = len(perm_gens[0])
    mats = []
    for g in perm_gens:
        m = mat_zero(n - 1, n - 1)
        for i in range(n - 1):
            gi, gl = g[i], g[n - 1]
            if gi != n - 1:
                m[gi][i] = m[gi][i] + 1
            if gl != n - 1:
                m[gl][i] = m[gl][i] - 1
        mats.append(m)
    return mats


chi4 = deleted_perm(GENS)

sylows = set()
for g in ELEMENTS:
    if class_of(g) in (3, 4):
        sub = [tuple(range(5))]
        x = g
        while x != tuple(range(5)):
            sub.append(x)
            x = compose(x, g)
        sylows.add(frozenset(sub))
sylows = sorted(sylows, key=lambda s: sorted(s))
assert len(sylows) == 6


def sylow_action(g):
    img = []
    for P in sylows:
        Q = frozenset(compose(compose(g, x), inverse(g)) for x in P)
        img.append(sylows.index(Q))
    return tuple(img)


chi5 = deleted_perm([sylow_action(g) for g in GENS])


def wedge2(m):
    pairs = list(itertools.combinations(range(len(m)), 2))
    w = mat_zero(len(pairs), len(pairs))
    for r, (i, j) in enumerate(pairs):
        for c, (k, l) in enumerate(pairs):
            w[r][c] = m[i][k] * m[j][l] - m[i][l] * m[j][k]
    return w


CHAR_TABLE = {
    "chi1": [ONE, ONE, ONE, ONE, ONE],
    "chi3": [Q5(3), Q5(-1), ZERO, SPHI, PHI],
    "sigma_chi3": [Q5(3), Q5(-1), ZERO, PHI, SPHI],
    "chi4": [Q5(4), ZERO, ONE, Q5(-1), Q5(-1)],
    "chi5": [Q5(5), ONE, Q5(-1), ZERO, ZERO],
}

w2 = [wedge2(m) for m in chi4]
proj = mat_zero(6, 6)
for g in ELEMENTS:
    c = CHAR_TABLE["chi3"][class_of(g)]
    if c.is_zero():
        continue
    mg = mat_of(w2, g)
    for i in range(6):
        for j in range(6):
            proj[i][j] = proj[i][j] + c * mg[i][j]
proj = [[x * Fraction(3, 60) for x in row] for row in proj]

# Column basis of the image of the projector.
_, piv = rref_pivots(proj)
assert len(piv) == 3
Bm = [[proj[i][j] for j in piv] for i in range(6)]
# Left inverse: pick the pivot rows of the RREF of Bm^T... simpler: solve via
# rows where Bm is invertible.
row_sel = rref_pivots([list(r) for r in zip(*Bm)])[1]
assert len(row_sel) == 3
sub = [Bm[i] for i in row_sel]
aug = [sub[i] + mat_eye(3)[i] for i in range(3)]
red, _ = rref_pivots(aug)
sub_inv = [row[3:] for row in red]
left_inv = mat_zero(3, 6)
for r in range(3):
    for k, i in enumerate(row_sel):
        left_inv[r][i] = sub_inv[r][k]
chi3 = [mat_mul(mat_mul(left_inv, m), Bm) for m in w2]
sigma_chi3 = [[[x.conj() for x in row] for row in m] for m in chi3]

IRREPS = [("chi1", [mat_eye(1), mat_eye(1)]), ("chi3", chi3),
          ("sigma_chi3", sigma_chi3), ("chi4", chi4), ("chi5", chi5)]

for name, mats in IRREPS:
    for g in ELEMENTS:
        assert trace(mat_of(mats, g)) == CHAR_TABLE[name][class_of(g)], (name, g)
    for g in ELEMENTS:
        for s, gen in enumerate(GENS):
            lhs = mat_mul(mat_of(mats, g), mats[s])
            assert lhs == mat_of(mats, compose(g, gen)), (name, g, s)

# Sanity: check the relations listed below in every model.
WORDS = {"a^5": "aaaaa", "b^3": "bbb", "(a*b^-1)^3": "abbabbabb", "(a^2*b)^2": "aabaab"}
for name, mats in IRREPS:
    for rel, word in WORDS.items():
        m = mat_eye(len(mats[0]))
        for ch in word:
            m = mat_mul(m, mats["ab".index(ch)])
        assert m == mat_eye(len(m)), (name, rel)


def perm_str(g):
    return " ".join(str(x + 1) for x in g)


def power_class(c, m):
    g = CLASS_REPS[c]
    x = tuple(range(5))
    for _ in range(m):
        x = compose(x, g)
    return class_of(x)


out = []
out.append("# A5 = <a, b>, a = (1,2,3,4,5), b = (3,4,5), acting on {1..5}.")
out.append("# Products compose right to left: (g*h)(x) = g(h(x)).")
out.append("# Presentation checked by the loader: a^5 = b^3 = (a*b^-1)^3 = (a^2*b)^2 = 1")
out.append("# together with closure of the full Cayley graph (60 elements, 120 edges).")
out.append("# Scalars: a/b+c/d*r5 means a/b + (c/d)*sqrt(5); short forms '3', '-1/2' allowed.")
out.append("bgg-forge-fixture 1")
out.append("group A5 60")
out.append("generator a " + perm_str(A))
out.append("generator b " + perm_str(B))
for rel, word in WORDS.items():
    out.append(f"relation {rel} = " + " ".join(word))
for i, (name, rep) in enumerate(zip(CLASS_NAMES, CLASS_REPS)):
    powers = " ".join(str(power_class(i, m)) for m in range(0, 31))
    out.append(f"class {i} {name} size {len(CLASSES[i])} rep {perm_str(rep)} powers {powers}")
for name, row in CHAR_TABLE.items():
    out.append("character " + name + " " + " ".join(str(v) for v in row))
for name, mats in IRREPS:
    out.append(f"irrep {name} dim {len(mats[0])}")
    for s, m in zip("ab", mats):
        out.append(f"matrix {s}")
        for row in m:
            out.append(" ".join(str(x) for x in row))
out.append("end")

text = "\n".join(out) + "\n"
if len(sys.argv) > 1:
    with open(sys.argv[1], "w") as f:
        f.write(text)
else:
    sys.stdout.write(text)
