"""Independent constructions used as test oracles.

Nothing here calls the GF(2) rank code: the cube and the genus-2 surface are
assembled by hand, ranks of incidence matrices come from union-find, and
the dense oracle works on full 2**n state vectors.
"""

from __future__ import annotations

import itertools

import numpy as np

from toric_entropy.surface import build_torus


def cube_document() -> dict:
    verts = list(itertools.product((0, 1), repeat=3))
    vid = {v: i for i, v in enumerate(verts)}
    edges = []
    for v in verts:
        for axis in range(3):
            if v[axis] == 0:
                w = list(v)
                w[axis] = 1
                edges.append((vid[v], vid[tuple(w)]))
    stars = [[e for e, (a, b) in enumerate(edges) if i in (a, b)] for i in range(8)]
    faces = []
    for axis in range(3):
        for side in (0, 1):
            on = {vid[v] for v in verts if v[axis] == side}
            faces.append([e for e, (a, b) in enumerate(edges) if a in on and b in on])
    return {"n_links": len(edges), "stars": stars, "plaquettes": faces}


def double_torus_document(k: int = 3) -> dict:
    """Two k x k tori glued crosswise along a slit on link h(0, 0).

    The slit endpoints become single sites of degree 8, giving a genus-2
    surface with n0 = 2k^2 - 2, n1 = 4k^2, n2 = 2k^2.
    """
    t = build_torus(k)
    n1, n0 = t.n_links, t.n_sites
    e1, e2 = 0, n1  # copies of h(0,0) in the first and second torus
    stars = [list(st) for st in t.stars] + [[l + n1 for l in st] for st in t.stars]
    plaquettes = [list(p) for p in t.plaquettes] + [[l + n1 for l in p] for p in t.plaquettes]
    below = (k - 1) * k  # face (k-1, 0) borders h(0,0) from below
    plaquettes[below] = [e2 if l == e1 else l for l in plaquettes[below]]
    plaquettes[n0 + below] = [e1 if l == e2 else l for l in plaquettes[n0 + below]]
    for site in (0, 1):  # sites (0,0) and (0,1), the slit endpoints
        stars[site] = stars[site] + stars[n0 + site]
    del stars[n0 + 1]
    del stars[n0]
    return {"n_links": 2 * n1, "stars": stars, "plaquettes": plaquettes}


def components(n_sites: int, edges) -> int:
    parent = list(range(n_sites))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    count = n_sites
    for u, v in edges:
        ru, rv = find(int(u)), find(int(v))
        if ru != rv:
            parent[ru] = rv
            count -= 1
    return count


def incidence_rank(s, links) -> int:
    """Rank of the star matrix restricted to ``links``, via graph components.

    Every link meets exactly two sites, so the restricted star matrix is the
    incidence matrix of the graph (sites, links) and has rank n0 - #components.
    """
    return s.n_sites - components(s.n_sites, (s.link_stars[l] for l in links))


def graph_entropy(s, links) -> int:
    links = set(links)
    rest = set(range(s.n_links)) - links
    return incidence_rank(s, links) + incidence_rank(s, rest) - (s.n_sites - 1)


def face_links_bruteforce(k: int, i0: int, j0: int, a: int, b: int) -> set[int]:
    """Links bordering at least one face of the block, from lattice coordinates."""
    faces = {((i0 + r) % k, (j0 + c) % k) for r in range(a) for c in range(b)}
    out = set()
    for i in range(k):
        for j in range(k):
            # h(i,j) separates faces (i,j) and (i-1,j); v(i,j) separates (i,j) and (i,j-1)
            if {(i, j), ((i - 1) % k, j)} & faces:
                out.add(2 * (i * k + j))
            if {(i, j), (i, (j - 1) % k)} & faces:
                out.add(2 * (i * k + j) + 1)
    return out


def dense_ground_projection(s, rng) -> np.ndarray:
    """A random ground state obtained by projecting a random dense vector."""
    n = s.n_links
    idx = np.arange(1 << n)
    psi = rng.normal(size=1 << n) + 1j * rng.normal(size=1 << n)
    for p in s.plaquettes:
        m = sum(1 << l for l in p)
        sign = 1 - 2 * (np.bitwise_count(idx & m).astype(np.int64) & 1)
        psi = (psi + sign * psi) / 2
    for st in s.stars:
        m = sum(1 << l for l in st)
        psi = (psi + psi[idx ^ m]) / 2
    return psi / np.linalg.norm(psi)


def dense_from_support(psi_support) -> np.ndarray:
    vec = np.zeros(1 << psi_support.n_links, dtype=np.complex128)
    for e, a in psi_support.amplitudes.items():
        vec[e] = a
    return vec


def dense_entropy(vec: np.ndarray, n: int, links) -> float:
    """Entropy of the links in ``links`` by SVD of the reshaped state vector."""
    a = sorted(links)
    b = [l for l in range(n) if l not in set(a)]
    t = vec.reshape([2] * n)  # axis 0 holds bit n-1
    m = np.transpose(t, [n - 1 - l for l in a] + [n - 1 - l for l in b]).reshape(1 << len(a), -1)
    p = np.linalg.svd(m, compute_uv=False) ** 2
    p = p[p > 1e-14]
    return float(-(p * np.log2(p)).sum())
