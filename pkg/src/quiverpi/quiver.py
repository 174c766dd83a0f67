"""Full quivers and their realization as block-upper-triangular algebras.

A quiver is a labeled DAG: vertices are diagonal matrix blocks (degree,
field exponent, filled flag), edges are radical connections, and gluing
identifies blocks or edges up to a Frobenius twist or a scaling factor.
realize() produces a concrete algebra over an ambient finite field or the
rationals, with an enumerated pure basis split into semisimple and radical
parts and a computed radical nilpotence index.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .matrep import Mat
from .scalars import FieldElement, FieldSpec, ScalarError, frobenius, parse_scalar, render_scalar

AMBIENT_ORDER_CAP = 4096


class QuiverError(ValueError):
    pass


@dataclass(frozen=True)
class Vertex:
    id: int
    label: str
    degree: int
    fieldexp: int
    filled: bool = True


@dataclass(frozen=True)
class VertexGluing:
    id1: int
    id2: int
    kind: str  # identical | frobenius
    e1: int = 0
    e2: int = 0


@dataclass(frozen=True)
class Edge:
    src: int
    dst: int
    internal: bool = False
    positions: tuple = None  # optional ((r, c), ...), 1-based; None means all


@dataclass(frozen=True)
class EdgeGluing:
    edge1: tuple
    edge2: tuple
    kind: str  # frobenius | prop
    nu: FieldElement = None


class FullQuiver:
    def __init__(self, spec, vertices, vertex_gluings=(), edges=(), edge_gluings=()):
        self.spec = spec
        self.vertices = tuple(sorted(vertices, key=lambda v: v.id))
        self.vertex_gluings = tuple(vertex_gluings)
        self.edges = tuple(edges)
        self.edge_gluings = tuple(edge_gluings)
        self._by_id = {v.id: v for v in self.vertices}

    def vertex(self, vid):
        if vid not in self._by_id:
            raise QuiverError(f"unknown vertex id {vid}")
        return self._by_id[vid]

    @property
    def ntilde(self):
        return max((v.degree for v in self.vertices), default=0)

    def vertex_classes(self):
        """Union-find over diagonal gluings: class id -> sorted member ids."""
        parent = {v.id: v.id for v in self.vertices}

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for g in self.vertex_gluings:
            if g.id1 in parent and g.id2 in parent:
                ra, rb = find(g.id1), find(g.id2)
                if ra != rb:
                    parent[max(ra, rb)] = min(ra, rb)
        classes = {}
        for v in self.vertices:
            classes.setdefault(find(v.id), []).append(v.id)
        return {rep: sorted(members) for rep, members in classes.items()}

    def frobenius_exponents(self):
        """Absolute twist exponent per vertex, propagated from the gluing table.

        Conflicts are reported modulo the class field exponent.
        """
        exps = {}
        problems = []
        for g in self.vertex_gluings:
            if g.id1 not in self._by_id or g.id2 not in self._by_id:
                continue
            e1, e2 = (0, 0) if g.kind == "identical" else (g.e1, g.e2)
            t = self.vertex(g.id1).fieldexp
            known1, known2 = g.id1 in exps, g.id2 in exps
            if not known1 and not known2:
                exps[g.id1], exps[g.id2] = e1 % max(t, 1), e2 % max(t, 1)
            elif known1 and not known2:
                exps[g.id2] = (exps[g.id1] + e2 - e1) % max(t, 1)
            elif known2 and not known1:
                exps[g.id1] = (exps[g.id2] + e1 - e2) % max(t, 1)
            else:
                if (exps[g.id2] - exps[g.id1] - (e2 - e1)) % max(t, 1) != 0:
                    problems.append((g.id1, g.id2))
        for v in self.vertices:
            exps.setdefault(v.id, 0)
        return exps, problems


# -- validation ---------------------------------------------------------------

def validate(q):
    """All invariant violations, as diagnostics; empty list iff valid.

    Entries are 'error: ...' or 'warning: ...'; warnings do not block realize.
    """
    out = []
    ids = [v.id for v in q.vertices]
    if len(ids) != len(set(ids)):
        out.append("error: duplicate vertex ids")
    order = {vid: i for i, vid in enumerate(ids)}
    for v in q.vertices:
        if v.degree < 1:
            out.append(f"error: vertex {v.id} has degree < 1")
        if v.fieldexp < 1:
            out.append(f"error: vertex {v.id} has field exponent < 1")
        if not q.spec.is_finite and v.fieldexp != 1:
            out.append(f"error: vertex {v.id} has field exponent > 1 over characteristic 0")
    seen_edges = set()
    for e in q.edges:
        if e.src not in order or e.dst not in order:
            out.append(f"error: edge {e.src}->{e.dst} references unknown vertex")
            continue
        if e.src == e.dst:
            out.append(f"error: loop at vertex {e.src}")
            continue
        if (e.src, e.dst) in seen_edges:
            out.append(f"error: double edge {e.src}->{e.dst}")
        seen_edges.add((e.src, e.dst))
        if order[e.src] >= order[e.dst]:
            out.append(f"error: edge {e.src}->{e.dst} does not increase vertex order")
        if e.positions is not None:
            n1, n2 = q.vertex(e.src).degree, q.vertex(e.dst).degree
            for (r, c) in e.positions:
                if not (1 <= r <= n1 and 1 <= c <= n2):
                    out.append(f"error: edge {e.src}->{e.dst} position {r}-{c} out of range")
    # cycles (direction errors already imply none, but check independently)
    adj = {}
    for e in q.edges:
        if e.src in order and e.dst in order and e.src != e.dst:
            adj.setdefault(e.src, []).append(e.dst)
    state = {}

    def dfs(u):
        state[u] = 1
        for w in adj.get(u, ()):
            if state.get(w) == 1:
                return True
            if state.get(w) is None and dfs(w):
                return True
        state[u] = 2
        return False

    if any(state.get(v.id) is None and dfs(v.id) for v in q.vertices):
        out.append("error: cycle in quiver")
    for g in q.vertex_gluings:
        if g.id1 not in order or g.id2 not in order:
            out.append(f"error: gluing references unknown vertex {g.id1} or {g.id2}")
            continue
        v1, v2 = q.vertex(g.id1), q.vertex(g.id2)
        if (v1.label, v1.degree, v1.fieldexp) != (v2.label, v2.degree, v2.fieldexp):
            out.append(f"error: glued vertices {g.id1},{g.id2} differ in label, degree, or field exponent")
        if g.kind == "frobenius" and not q.spec.is_finite:
            out.append(f"warning: Frobenius gluing {g.id1},{g.id2} violates the proportional-Frobenius "
                       "precondition over characteristic 0")
        if g.kind not in ("identical", "frobenius"):
            out.append(f"error: unknown vertex gluing kind {g.kind}")
    _, conflicts = q.frobenius_exponents()
    for a, b in conflicts:
        out.append(f"error: inconsistent Frobenius exponents around vertices {a},{b}")
    classes = q.vertex_classes()
    class_of = {vid: rep for rep, members in classes.items() for vid in members}
    for e in q.edges:
        if e.src in order and e.dst in order and e.internal:
            if class_of.get(e.src) != class_of.get(e.dst):
                out.append(f"error: internal edge {e.src}->{e.dst} joins unglued blocks")
    edge_set = {(e.src, e.dst) for e in q.edges}
    for g in q.edge_gluings:
        for pair in (g.edge1, g.edge2):
            if pair not in edge_set:
                out.append(f"error: edge gluing references missing edge {pair[0]}-{pair[1]}")
        if g.kind == "prop":
            if g.nu is None or g.nu.is_zero():
                out.append("error: proportional gluing requires a nonzero scaling factor")
        elif g.kind == "frobenius":
            if not q.spec.is_finite:
                out.append("warning: Frobenius edge gluing violates the proportional-Frobenius "
                           "precondition over characteristic 0")
        else:
            out.append(f"error: unknown edge gluing kind {g.kind}")
        if g.edge1 in edge_set and g.edge2 in edge_set:
            if class_of.get(g.edge1[0]) != class_of.get(g.edge2[0]) or \
               class_of.get(g.edge1[1]) != class_of.get(g.edge2[1]):
                out.append(f"error: glued edges {g.edge1},{g.edge2} connect unglued endpoint classes")
    return out


# -- classification -----------------------------------------------------------

@dataclass(frozen=True)
class Classification:
    kind: str            # semisimple | bridge | internal
    degrees: tuple       # one degree, or the two endpoint degrees
    proper: bool = False
    ntilde_bridge: bool = False

    def describe(self):
        if self.kind == "semisimple":
            return f"semisimple({self.degrees[0]})"
        if self.kind == "internal":
            return f"internal({self.degrees[0]})"
        tag = ", proper" if self.proper else ""
        nb = ", ntilde" if self.ntilde_bridge else ""
        return f"bridge({self.degrees[0]}, {self.degrees[1]}{tag}{nb})"


def is_right(classification, m):
    """m-right: m appears among the substitution's degrees.

    Internal substitutions are technically right but carry kind='internal'
    so callers can treat them specially.
    """
    return m in classification.degrees


@dataclass
class PureElement:
    mat: Mat
    kind: str          # semisimple | radical
    src_class: int
    dst_class: int
    tag: tuple
    classification: Classification = None

    def __repr__(self):
        return f"<{self.kind} {self.tag}>"


class StructuredAlgebra:
    """Concrete realization: ambient Mat algebra with an enumerated pure basis."""

    def __init__(self, quiver, spec, base_order, offsets, classes, exponents,
                 semisimple_basis, radical_basis, edge_units, t):
        self.quiver = quiver
        self.spec = spec                  # ambient field K
        self.base_order = base_order      # q = |F|, or 0 over the rationals
        self.offsets = offsets            # vertex id -> diagonal offset
        self.classes = classes            # class rep -> member vertex ids
        self.exponents = exponents        # vertex id -> Frobenius exponent
        self.semisimple_basis = semisimple_basis
        self.radical_basis = radical_basis
        self.edge_units = edge_units
        self.t = t
        self.n = sum(v.degree for v in quiver.vertices)
        self.ntilde = quiver.ntilde
        self.class_of = {vid: rep for rep, members in classes.items() for vid in members}
        self._span_rows = None

    # -- pure basis -----------------------------------------------------------

    def pure_basis(self):
        return list(self.semisimple_basis) + list(self.radical_basis)

    def base_field_elements(self):
        """The base field F = GF(q) inside the ambient field (all of QQ is
        represented by small integers for sampling purposes)."""
        if not self.spec.is_finite:
            raise QuiverError("cannot enumerate scalars over the rationals")
        q = self.base_order
        return [a for a in self.spec.elements() if a ** q == a]

    def nonzero_base_scalars(self):
        return [a for a in self.base_field_elements() if not a.is_zero()]

    def zero_mat(self):
        return Mat.zero(self.spec, self.n)

    def identity_mat(self):
        return Mat.identity(self.spec, self.n)

    # -- membership and classification ----------------------------------------

    def _vectorize(self, mat):
        vec = []
        for row in mat.rows:
            for e in row:
                if self.spec.is_finite:
                    vec.extend(e.rep)
                else:
                    vec.append(e.rep)
        return vec

    def _prime_scalars(self):
        # GF(p)-basis of the base field F inside K; [one] when F is prime or QQ
        if not self.spec.is_finite or self.base_order == self.spec.p:
            return [self.spec.one]
        f_elems = [a for a in self.spec.elements() if a ** self.base_order == a]
        return _field_basis_over_prime(f_elems, self.spec)

    def in_span(self, mat):
        if self._span_rows is None:
            rows = []
            for lam in self._prime_scalars():
                for b in self.pure_basis():
                    rows.append(self._vectorize(b.mat.scale(lam)))
            self._span_rows = _echelonize(rows, self.spec)
        vec = self._vectorize(mat)
        return _reduces_to_zero(vec, self._span_rows, self.spec)

    def block_region(self, vid):
        off = self.offsets[vid]
        deg = self.quiver.vertex(vid).degree
        return range(off, off + deg)

    def support_classes(self, mat):
        """(diagonal classes touched, strip class pairs touched) by mat."""
        diag = set()
        strips = set()
        regions = {v.id: (self.offsets[v.id], v.degree) for v in self.quiver.vertices}

        def locate(i):
            for vid, (off, deg) in regions.items():
                if off <= i < off + deg:
                    return vid
            raise QuiverError("index outside all blocks")

        for i in range(mat.n):
            for j in range(mat.n):
                if mat.rows[i][j].is_zero():
                    continue
                vi, vj = locate(i), locate(j)
                if vi == vj:
                    diag.add(self.class_of[vi])
                else:
                    strips.add((self.class_of[vi], self.class_of[vj]))
        return diag, strips


def classify_substitution(algebra, e):
    """Classify a pure element (or scalar multiple): semisimple, bridge, internal.

    Mixed S+J sums are rejected; reduce them quasi-linearly first.
    """
    if isinstance(e, PureElement):
        if e.classification is not None:
            return e.classification
        mat = e.mat
    else:
        mat = e
    if mat.is_zero():
        raise QuiverError("cannot classify the zero substitution")
    diag, strips = algebra.support_classes(mat)
    if diag and strips:
        raise QuiverError("substitution mixes S and J; reduce to pure components quasi-linearly")
    q = algebra.quiver
    deg_of = {rep: q.vertex(rep).degree for rep in algebra.classes}
    if diag:
        if len(diag) > 1:
            raise QuiverError("semisimple substitution spans several block classes; not pure")
        (c,) = diag
        result = Classification("semisimple", (deg_of[c],))
    else:
        if len(strips) > 1:
            raise QuiverError("radical substitution spans several class pairs; not pure")
        ((cs, ct),) = strips
        d1, d2 = deg_of[cs], deg_of[ct]
        if cs == ct:
            result = Classification("internal", (d1,))
        else:
            proper = d1 != d2
            result = Classification("bridge", (d1, d2), proper=proper,
                                    ntilde_bridge=proper and algebra.ntilde in (d1, d2))
    if isinstance(e, PureElement):
        e.classification = result
    return result


# -- realization --------------------------------------------------------------

def realize(q):
    """Concrete StructuredAlgebra for a valid quiver.

    Blocks are placed diagonally in vertex-id order.  Frobenius-glued classes
    are realized as {diag(alpha^(q^e1), alpha^(q^e2))}; every edge contributes
    one radical generator per allowed position (scaled through the entry
    field), with glued edges tied by the scaling factor or Frobenius power.
    The nilpotence index t is computed by powering the radical span.
    """
    problems = [d for d in validate(q) if d.startswith("error")]
    if problems:
        raise QuiverError("invalid quiver: " + "; ".join(problems))
    if not q.vertices:
        raise QuiverError("empty quiver")
    spec0 = q.spec
    finite = spec0.is_finite
    if not finite:
        for g in q.vertex_gluings:
            if g.kind == "frobenius":
                raise QuiverError("Frobenius gluing requested over characteristic 0")
        for g in q.edge_gluings:
            if g.kind == "frobenius":
                raise QuiverError("Frobenius edge gluing requested over characteristic 0")

    classes = q.vertex_classes()
    exponents, _ = q.frobenius_exponents()
    texp_of_class = {rep: q.vertex(rep).fieldexp for rep in classes}

    if finite:
        lcm = 1
        for t in texp_of_class.values():
            lcm = lcm * t // _gcd(lcm, t)
        for e in q.edges:
            te = _lcm2(q.vertex(e.src).fieldexp, q.vertex(e.dst).fieldexp)
            lcm = _lcm2(lcm, te)
        if lcm == 1:
            spec = spec0
        else:
            if spec0.order ** lcm > AMBIENT_ORDER_CAP:
                raise QuiverError("ambient field exceeds the desk-scale cap")
            spec = FieldSpec.gf(spec0.p, spec0.k * lcm)
        base_order = spec0.order
        embed = _embedding(spec0, spec)
        gens = _subfield_generators(spec, base_order)
    else:
        spec = spec0
        base_order = 0
        embed = lambda a: a
        gens = {}

    offsets = {}
    off = 0
    for v in q.vertices:
        offsets[v.id] = off
        off += v.degree
    n = off

    # semisimple generators: one per (class, field power, block position)
    ss_basis = []
    for rep in sorted(classes):
        members = classes[rep]
        v0 = q.vertex(rep)
        if not v0.filled:
            continue  # empty vertices occupy space but contribute no action
        t_c = v0.fieldexp
        beta = gens[t_c] if finite else spec.one
        for s in range(t_c):
            alpha = beta ** s
            for (u, w) in itertools.product(range(v0.degree), repeat=2):
                mat = Mat.zero(spec, n)
                rows = [list(r) for r in mat.rows]
                for m in members:
                    val = frobenius(alpha, exponents[m], q=base_order) if finite else alpha
                    rows[offsets[m] + u][offsets[m] + w] = val
                ss_basis.append(PureElement(Mat(spec, rows), "semisimple", rep, rep,
                                            ("ss", rep, s, u, w)))

    # edge classes and tied radical units
    edge_reps, edge_transforms = _edge_classes(q, embed, base_order)
    edge_units = []
    for rep_edge in sorted(edge_reps):
        members = edge_reps[rep_edge]
        src0, dst0 = rep_edge
        n1, n2 = q.vertex(src0).degree, q.vertex(dst0).degree
        t_e = _lcm2(q.vertex(src0).fieldexp, q.vertex(dst0).fieldexp) if finite else 1
        beta = gens[t_e] if finite else spec.one
        rep_positions = _edge_positions(q, rep_edge, n1, n2)
        for s in range(t_e):
            alpha = beta ** s
            for (r, c) in rep_positions:
                mat_rows = [[spec.zero] * n for _ in range(n)]
                for (esrc, edst) in members:
                    val = edge_transforms[(esrc, edst)](alpha)
                    mat_rows[offsets[esrc] + r - 1][offsets[edst] + c - 1] = val
                cls_src = _class_of(classes, src0)
                cls_dst = _class_of(classes, dst0)
                edge_units.append(PureElement(Mat(spec, mat_rows), "radical",
                                              cls_src, cls_dst,
                                              ("edge", rep_edge, s, r, c)))

    # close the radical under multiplication by the algebra; group per class pair
    radical_basis, t = _close_radical(spec, base_order, ss_basis, edge_units, n)

    return StructuredAlgebra(q, spec, base_order, offsets, classes, exponents,
                             ss_basis, radical_basis, edge_units, t)


def _class_of(classes, vid):
    for rep, members in classes.items():
        if vid in members:
            return rep
    raise QuiverError(f"vertex {vid} missing from classes")


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _lcm2(a, b):
    return a * b // _gcd(a, b)


def _embedding(sub, big):
    """Field embedding GF(q) -> GF(q^L) determined by the first root of the
    subfield modulus; identity when the specs coincide."""
    if sub == big:
        return lambda a: a
    root = None
    for cand in big.elements():
        acc = big.zero
        for coef in reversed(sub.modulus):
            acc = acc * cand + big.element(coef)
        if acc.is_zero():
            root = cand
            break
    if root is None:
        raise QuiverError("could not embed the base field in the ambient field")

    def embed(a):
        acc = big.zero
        for coef in reversed(a.rep):
            acc = acc * root + big.element(coef)
        return acc

    return embed


def _subfield_generators(spec, q):
    """For each needed t: a deterministic element of degree exactly t over GF(q)."""
    gens = {1: spec.one}
    degree_over_base = spec.k // _k_of_order(q, spec.p)
    for t in range(2, degree_over_base + 1):
        if degree_over_base % t != 0:
            continue
        for cand in spec.elements():
            if cand.is_zero():
                continue
            if frobenius(cand, t, q=q) != cand:
                continue
            if any(frobenius(cand, s, q=q) == cand for s in range(1, t)):
                continue
            gens[t] = cand
            break
    return gens


def _k_of_order(q, p):
    k = 0
    while q > 1:
        q //= p
        k += 1
    return k


def _edge_positions(q, edge_pair, n1, n2):
    for e in q.edges:
        if (e.src, e.dst) == edge_pair:
            if e.positions is not None:
                return list(e.positions)
            return [(r + 1, c + 1) for r in range(n1) for c in range(n2)]
    raise QuiverError(f"edge {edge_pair} not found")


def _edge_classes(q, embed, base_order):
    """Union-find over edge gluings; transform per member edge relative to its
    class representative (composition of scalings and Frobenius powers)."""
    pairs = [(e.src, e.dst) for e in q.edges]
    parent = {p: p for p in pairs}

    def find(p):
        while parent[p] != p:
            parent[p] = parent[parent[p]]
            p = parent[p]
        return p

    adj = {p: [] for p in pairs}
    for g in q.edge_gluings:
        adj[g.edge1].append((g.edge2, g))
        adj[g.edge2].append((g.edge1, g))
        ra, rb = find(g.edge1), find(g.edge2)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    reps = {}
    for p in pairs:
        reps.setdefault(find(p), []).append(p)

    transforms = {}
    for rep, members in reps.items():
        transforms[rep] = lambda a: a
        seen = {rep}
        queue = [rep]
        while queue:
            cur = queue.pop()
            for (other, g) in adj[cur]:
                if other in seen:
                    continue
                seen.add(other)
                base = transforms[cur]
                if g.kind == "prop":
                    nu = embed(g.nu)
                    if (g.edge1 == cur and g.edge2 == other):
                        transforms[other] = _compose_scale(base, nu)
                    else:
                        transforms[other] = _compose_scale(base, nu.inverse())
                else:  # frobenius twist a -> a^q across the gluing
                    if g.edge1 == cur and g.edge2 == other:
                        transforms[other] = _compose_frob(base, base_order, 1)
                    else:
                        transforms[other] = _compose_frob(base, base_order, -1)
                queue.append(other)
    return reps, transforms


def _compose_scale(fn, nu):
    return lambda a: fn(a) * nu


def _compose_frob(fn, q, sign):
    if sign > 0:
        return lambda a: fn(a) ** q
    # inverse Frobenius: a -> a^(q^(k-1)) on a field of order q^k; resolved lazily
    def inv(a):
        v = fn(a)
        order = v.spec.order
        k = 0
        o = order
        # order = q^k
        while o > 1:
            o //= q
            k += 1
        return v ** (q ** (k - 1))
    return inv


def _vectorize_mat(mat, finite):
    out = []
    for row in mat.rows:
        for e in row:
            if finite:
                out.extend(e.rep)
            else:
                out.append(e.rep)
    return out


def _echelonize(rows, spec):
    """Row echelon basis over GF(p) (finite) or QQ; list of (pivot, vector)."""
    basis = []
    for vec in rows:
        vec = _reduce_vec(vec, basis, spec)
        piv = _first_nonzero(vec)
        if piv is not None:
            basis.append((piv, _normalize_vec(vec, piv, spec)))
            basis.sort(key=lambda pv: pv[0])
    return basis


def _first_nonzero(vec):
    for i, x in enumerate(vec):
        if x != 0:
            return i
    return None


def _normalize_vec(vec, piv, spec):
    if spec.is_finite:
        p = spec.p
        inv = pow(vec[piv], -1, p)
        return [(x * inv) % p for x in vec]
    inv = 1 / vec[piv]
    return [x * inv for x in vec]


def _reduce_vec(vec, basis, spec):
    vec = list(vec)
    if spec.is_finite:
        p = spec.p
        for piv, row in basis:
            if vec[piv] % p:
                f = vec[piv] % p
                vec = [(x - f * y) % p for x, y in zip(vec, row)]
    else:
        for piv, row in basis:
            if vec[piv] != 0:
                f = vec[piv]
                vec = [x - f * y for x, y in zip(vec, row)]
    return vec


def _reduces_to_zero(vec, basis, spec):
    return _first_nonzero(_reduce_vec(vec, basis, spec)) is None


def _close_radical(spec, base_order, ss_basis, edge_units, n):
    """Radical ideal span: close edge units under products with the algebra.

    Products stay class-pair homogeneous, so the basis is organized per
    (source class, target class) and classification stays well defined.
    """
    finite = spec.is_finite
    pools = {}
    echelons = {}

    def try_add(elem):
        key = (elem.src_class, elem.dst_class)
        ech = echelons.setdefault(key, [])
        vec = _reduce_vec(_vectorize_mat(elem.mat, finite), ech, spec)
        piv = _first_nonzero(vec)
        if piv is None:
            return False
        ech.append((piv, _normalize_vec(vec, piv, spec)))
        ech.sort(key=lambda pv: pv[0])
        pools.setdefault(key, []).append(elem)
        return True

    scalars = [spec.one]
    if finite and base_order > spec.p:
        # F-span needs GF(p)-multiples of an F-basis over GF(p)
        f_elems = [a for a in spec.elements() if a ** base_order == a]
        basis_f = _field_basis_over_prime(f_elems, spec)
        scalars = basis_f

    frontier = []
    for unit in edge_units:
        for lam in scalars:
            scaled = PureElement(unit.mat.scale(lam), "radical", unit.src_class,
                                 unit.dst_class, unit.tag + ("scaled",))
            if try_add(scaled if lam != spec.one else unit):
                frontier.append(pools[(unit.src_class, unit.dst_class)][-1])

    # left or right multiplication by a class-c semisimple element is zero
    # unless c matches the strip endpoint, so products keep the class pair
    ss_mats = [b.mat for b in ss_basis]
    while frontier:
        new_frontier = []
        current = [e for pool in pools.values() for e in pool]
        for elem in frontier:
            candidates = []
            for smat in ss_mats:
                candidates.append((elem.src_class, elem.dst_class, smat * elem.mat))
                candidates.append((elem.src_class, elem.dst_class, elem.mat * smat))
            for other in current:
                candidates.append((elem.src_class, other.dst_class, elem.mat * other.mat))
                candidates.append((other.src_class, elem.dst_class, other.mat * elem.mat))
            for (cs, ct, mat) in candidates:
                if mat.is_zero():
                    continue
                cand = PureElement(mat, "radical", cs, ct, ("prod",))
                if try_add(cand):
                    new_frontier.append(cand)
        frontier = new_frontier

    radical_basis = [e for key in sorted(pools) for e in pools[key]]

    # nilpotence index by powering the ideal span
    t = 0
    if radical_basis:
        power = [e.mat for e in radical_basis]
        t = 1
        while True:
            nxt_ech = []
            nxt = []
            for m1 in power:
                for e in radical_basis:
                    prod = m1 * e.mat
                    if prod.is_zero():
                        continue
                    vec = _reduce_vec(_vectorize_mat(prod, finite), nxt_ech, spec)
                    piv = _first_nonzero(vec)
                    if piv is not None:
                        nxt_ech.append((piv, _normalize_vec(vec, piv, spec)))
                        nxt_ech.sort(key=lambda pv: pv[0])
                        nxt.append(prod)
            if not nxt:
                break
            power = nxt
            t += 1
    return radical_basis, t


def _field_basis_over_prime(f_elems, spec):
    basis = []
    ech = []
    for a in f_elems:
        vec = _reduce_vec(list(a.rep), ech, spec)
        piv = _first_nonzero(vec)
        if piv is not None:
            ech.append((piv, _normalize_vec(vec, piv, spec)))
            ech.sort(key=lambda pv: pv[0])
            basis.append(a)
    return basis


# -- branches and dominance -----------------------------------------------------

@dataclass
class BranchInfo:
    vertices: tuple
    degree_vector: tuple
    descending_degree_vector: tuple
    ntilde: int
    depth: int

    @property
    def length(self):
        return len(self.vertices) - 1


def branches(q):
    """All directed paths (including single vertices), as BranchInfo."""
    if not q.vertices:
        raise QuiverError("empty quiver")
    adj = {}
    for e in q.edges:
        adj.setdefault(e.src, []).append(e.dst)
    ntilde = q.ntilde
    out = []

    def extend(path):
        out.append(tuple(path))
        for nxt in sorted(adj.get(path[-1], ())):
            extend(path + [nxt])

    for v in q.vertices:
        extend([v.id])
    infos = []
    for path in out:
        degs = tuple(q.vertex(vid).degree for vid in path)
        infos.append(BranchInfo(path, degs, tuple(sorted(degs, reverse=True)),
                                ntilde, sum(1 for d in degs if d == ntilde)))
    return infos


def _edge_is_m_bridge(q, class_of, a, b, m):
    if class_of[a] == class_of[b]:
        return False
    d1, d2 = q.vertex(a).degree, q.vertex(b).degree
    return d1 != d2 and m in (d1, d2)


def branch_key(q, info):
    """Comparator chain of the dominance definition, as a sortable tuple:
    (ntilde-bridge count, length, ntilde endpoint degrees lex, then the same
    for ntilde-1 down to 1), tie-broken by smallest vertex-id sequence."""
    class_of = {vid: rep for rep, members in q.vertex_classes().items() for vid in members}
    path = info.vertices
    key = []
    for m in range(q.ntilde, 0, -1):
        hits = []
        for a, b in zip(path, path[1:]):
            if _edge_is_m_bridge(q, class_of, a, b, m):
                d1, d2 = q.vertex(a).degree, q.vertex(b).degree
                hits.append((max(d1, d2), min(d1, d2)))
        key.append(len(hits))
        if m == q.ntilde:
            key.append(info.length)
        key.append(tuple(sorted(hits, reverse=True)))
    key.append(tuple(-vid for vid in path))
    return tuple(key)


def dominant_branch(q):
    infos = branches(q)
    return max(infos, key=lambda info: branch_key(q, info))


# -- path grading ---------------------------------------------------------------

def _grade_modulus(q):
    g = 0
    for gl in q.vertex_gluings:
        if gl.kind == "frobenius":
            g = _gcd(g, abs(gl.e1 - gl.e2))
    return g


def path_grade(q, branch_vertices):
    """Grade of a path in the cyclic monoid <q>, as a canonical exponent.

    Vertices contribute their Frobenius twist, edges their gluing twist;
    gluing identifications are taken as congruence modulo the gcd of the
    vertex twist differences.  The adjoined zero element never appears for
    actual paths and is never identified with a power.
    """
    exps, _ = q.frobenius_exponents()
    total = sum(exps[v] for v in branch_vertices)
    for a, b in zip(branch_vertices, branch_vertices[1:]):
        total += _edge_twist_exponents(q).get((a, b), 0)
    g = _grade_modulus(q)
    return total % g if g else total


def _edge_twist_exponents(q):
    """Additive Frobenius twist per edge, propagated through edge gluings."""
    twists = {(e.src, e.dst): None for e in q.edges}
    adj = {pair: [] for pair in twists}
    for gl in q.edge_gluings:
        if gl.edge1 in adj and gl.edge2 in adj:
            step = 1 if gl.kind == "frobenius" else 0
            adj[gl.edge1].append((gl.edge2, step))
            adj[gl.edge2].append((gl.edge1, -step))
    for pair in sorted(twists):
        if twists[pair] is not None:
            continue
        twists[pair] = 0
        queue = [pair]
        while queue:
            cur = queue.pop()
            for (other, step) in adj[cur]:
                if twists[other] is None:
                    twists[other] = twists[cur] + step
                    queue.append(other)
    return twists


def is_canonical(q):
    """Basic quiver whose source-to-sink paths all share one grade."""
    srcs = [v.id for v in q.vertices if not any(e.dst == v.id for e in q.edges)]
    sinks = [v.id for v in q.vertices if not any(e.src == v.id for e in q.edges)]
    if len(srcs) != 1 or len(sinks) != 1:
        raise QuiverError("is_canonical requires a basic quiver (unique source and sink)")
    src, sink = srcs[0], sinks[0]
    grades = {path_grade(q, info.vertices)
              for info in branches(q)
              if info.vertices[0] == src and info.vertices[-1] == sink}
    return len(grades) <= 1


# -- .fq file format -------------------------------------------------------------

def parse_quiver(text):
    """Line-oriented .fq format; '#' starts a comment."""
    spec = None
    vertices = []
    vglue = []
    edges = []
    eglue = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        head = parts[0]
        try:
            if head == "field":
                p, k = int(parts[1]), int(parts[2])
                if p == 0:
                    spec = FieldSpec.rationals()
                elif len(parts) > 3:
                    modulus = tuple(int(c) for c in parts[3].split(","))
                    spec = FieldSpec.gf(p, k, modulus)
                else:
                    spec = FieldSpec.gf(p, k)
            elif head == "vertex":
                vid = int(parts[1])
                fields = {"label": None, "degree": None, "fieldexp": None}
                filled = True
                i = 2
                while i < len(parts):
                    if parts[i] == "empty":
                        filled = False
                        i += 1
                    else:
                        fields[parts[i]] = parts[i + 1]
                        i += 2
                vertices.append(Vertex(vid, fields["label"], int(fields["degree"]),
                                       int(fields["fieldexp"]), filled))
            elif head == "glue":
                id1, id2, kind = int(parts[1]), int(parts[2]), parts[3]
                if kind == "frobenius":
                    vglue.append(VertexGluing(id1, id2, kind, int(parts[4]), int(parts[5])))
                else:
                    vglue.append(VertexGluing(id1, id2, kind))
            elif head == "edge":
                src, dst = int(parts[1]), int(parts[2])
                internal = "internal" in parts[3:]
                positions = None
                if "positions" in parts:
                    pos_text = parts[parts.index("positions") + 1]
                    positions = tuple(tuple(int(x) for x in pc.split("-"))
                                      for pc in pos_text.split(","))
                edges.append(Edge(src, dst, internal, positions))
            elif head == "glueedge":
                e1 = tuple(int(x) for x in parts[1].split("-"))
                e2 = tuple(int(x) for x in parts[2].split("-"))
                kind = parts[3]
                nu = None
                if kind == "prop":
                    if spec is None:
                        raise QuiverError("field line must precede glueedge prop")
                    nu = parse_scalar(parts[4], spec)
                eglue.append(EdgeGluing(e1, e2, kind, nu))
            else:
                raise QuiverError(f"unknown directive {head!r}")
        except (IndexError, ValueError) as exc:
            raise QuiverError(f"line {lineno}: cannot parse {raw!r}: {exc}") from exc
    if spec is None:
        raise QuiverError("missing field line")
    return FullQuiver(spec, vertices, vglue, edges, eglue)


def render_quiver(q):
    lines = []
    if q.spec.is_finite:
        base = f"field {q.spec.p} {q.spec.k}"
        if q.spec.k > 1:
            base += " " + ",".join(str(c) for c in q.spec.modulus)
        lines.append(base)
    else:
        lines.append("field 0 1")
    for v in q.vertices:
        line = f"vertex {v.id} label {v.label} degree {v.degree} fieldexp {v.fieldexp}"
        if not v.filled:
            line += " empty"
        lines.append(line)
    for g in sorted(q.vertex_gluings, key=lambda g: (g.id1, g.id2)):
        if g.kind == "frobenius":
            lines.append(f"glue {g.id1} {g.id2} frobenius {g.e1} {g.e2}")
        else:
            lines.append(f"glue {g.id1} {g.id2} identical")
    for e in sorted(q.edges, key=lambda e: (e.src, e.dst)):
        line = f"edge {e.src} {e.dst}"
        if e.internal:
            line += " internal"
        if e.positions is not None:
            line += " positions " + ",".join(f"{r}-{c}" for r, c in e.positions)
        lines.append(line)
    for g in sorted(q.edge_gluings, key=lambda g: (g.edge1, g.edge2)):
        e1 = f"{g.edge1[0]}-{g.edge1[1]}"
        e2 = f"{g.edge2[0]}-{g.edge2[1]}"
        if g.kind == "prop":
            lines.append(f"glueedge {e1} {e2} prop {render_scalar(g.nu)}")
        else:
            lines.append(f"glueedge {e1} {e2} frobenius")
    return "\n".join(lines) + "\n"


def to_dot(q):
    """Plain DOT text for quick visualization."""
    lines = ["digraph quiver {"]
    for v in q.vertices:
        shape = "ellipse" if v.filled else "ellipse, style=dashed"
        lines.append(f'  v{v.id} [label="{v.label}({v.degree},{v.fieldexp})", shape={shape}];')
    for e in q.edges:
        style = ' [style=dotted, label="internal"]' if e.internal else ""
        lines.append(f"  v{e.src} -> v{e.dst}{style};")
    lines.append("}")
    return "\n".join(lines) + "\n"
