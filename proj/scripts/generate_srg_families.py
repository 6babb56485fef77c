#!/usr/bin/env python3
# Copyright (c) 2026 The qagi Authors.
# Licensed under the Apache License 2.0.
"""Regenerates the strongly regular graph families in data/srg.

Every family is rebuilt from small explicit constructions and closed under
operations that preserve the parameters:

  16  Shrikhande graph and the 4x4 rook's graph, SRG(16,6,2,2).
  25  SRG(25,12,5,6): Paley(25), Latin-square graphs and descendants of
      Steiner-triple-system two-graphs, closed under Seidel switching and
      Godsil-McKay switching inside regular two-graphs on 26 points.
  26  SRG(26,10,3,4): regular graphs in the switching classes of the
      26-point two-graphs found for n = 25.
  28  SRG(28,12,6,4): the triangular graph T(8) and the three Chang graphs.
  29  SRG(29,14,6,7): SAT search for graphs with a prescribed automorphism,
      followed by the descendant closure of each 30-point two-graph. This
      family takes hours on one core; the other four take minutes.

Graphs are deduplicated with nauty certificates and written in graph6,
sorted by certificate. Requires numpy, networkx, pynauty and python-sat.
"""

import argparse
import itertools
import multiprocessing as mp
import random
import sys
from pathlib import Path

import networkx as nx
import numpy as np
from pynauty import Graph as NautyGraph, certificate

PARAMS = {16: (16, 6, 2, 2), 25: (25, 12, 5, 6), 26: (26, 10, 3, 4),
          28: (28, 12, 6, 4), 29: (29, 14, 6, 7)}
EXPECTED = {16: 2, 25: 15, 26: 10, 28: 4, 29: 41}


def cert(a):
    a = np.asarray(a)
    n = len(a)
    adj = {i: [int(j) for j in np.nonzero(a[i])[0]] for i in range(n)}
    return certificate(NautyGraph(n, adjacency_dict=adj))


def is_srg(a, params):
    n, k, lam, mu = params
    a = np.asarray(a, dtype=np.int64)
    if a.shape != (n, n) or (a != a.T).any() or a.trace() != 0:
        return False
    if (a.sum(1) != k).any():
        return False
    eye = np.eye(n, dtype=np.int64)
    return (a @ a == k * eye + lam * a + mu * (1 - eye - a)).all()


def seidel_switch(g, subset):
    """Complements every edge slot between subset and its complement."""
    n = len(g)
    u = np.zeros(n, bool)
    u[list(subset)] = True
    b = g.copy()
    x = np.logical_xor.outer(u, u)
    b[x] = 1 - b[x]
    np.fill_diagonal(b, 0)
    return b


def descendants(g):
    """Descendants of the two-graph of g: isolate each vertex by switching on
    its neighbourhood and delete it."""
    out = []
    for v in range(len(g)):
        b = seidel_switch(g, np.nonzero(g[v])[0])
        out.append(np.delete(np.delete(b, v, 0), v, 1))
    return out


def with_isolated_vertex(a):
    n = len(a)
    g = np.zeros((n + 1, n + 1), np.int8)
    g[:n, :n] = a
    return g


def godsil_mckay4(g):
    """All Godsil-McKay switchings of g with a 4-vertex switching set."""
    n = len(g)
    res = []
    for c in itertools.combinations(range(n), 4):
        c = list(c)
        inner = g[np.ix_(c, c)].sum(1)
        if (inner != inner[0]).any():
            continue
        cnt = g[:, c].sum(1)
        outside = np.ones(n, bool)
        outside[c] = False
        rest = cnt[outside]
        if not np.all((rest == 0) | (rest == 2) | (rest == 4)):
            continue
        flip = np.nonzero(outside & (cnt == 2))[0]
        if len(flip) == 0:
            continue
        b = g.copy()
        for x in flip:
            b[x, c] = 1 - b[x, c]
            b[c, x] = 1 - b[c, x]
        res.append(b)
    return res


class TwoGraphCollection:
    """Regular two-graphs keyed by the smallest certificate among their
    descendants, plus the union of all descendants."""

    def __init__(self, params):
        self.params = params
        self.keys = set()
        self.representatives = []
        self.descendants = {}

    def add(self, g):
        ds = descendants(g)
        if not all(is_srg(d, self.params) for d in ds):
            return False
        certs = [cert(d) for d in ds]
        key = min(certs)
        if key in self.keys:
            return False
        self.keys.add(key)
        self.representatives.append(g)
        for c, d in zip(certs, ds):
            self.descendants.setdefault(c, d)
        print(f"  two-graphs {len(self.keys)}, descendants {len(self.descendants)}",
              file=sys.stderr)
        return True


# ---------------------------------------------------------------- n = 16

def family16():
    cayley = np.zeros((16, 16), np.int8)
    conn = {(1, 0), (3, 0), (0, 1), (0, 3), (1, 1), (3, 3)}
    for a in range(16):
        for b in range(16):
            d = ((a // 4 - b // 4) % 4, (a % 4 - b % 4) % 4)
            cayley[a, b] = d in conn
    rook = np.zeros((16, 16), np.int8)
    for a in range(16):
        for b in range(16):
            rook[a, b] = a != b and (a // 4 == b // 4 or a % 4 == b % 4)
    return [cayley, rook]


# ---------------------------------------------------------------- n = 25, 26

def paley25():
    els = [(a, b) for a in range(5) for b in range(5)]

    def mul(u, v):  # GF(25) = GF(5)[x] / (x^2 - 2)
        return ((u[0] * v[0] + 2 * u[1] * v[1]) % 5, (u[0] * v[1] + u[1] * v[0]) % 5)

    squares = {mul(e, e) for e in els if e != (0, 0)}
    a = np.zeros((25, 25), np.int8)
    for i, u in enumerate(els):
        for j, v in enumerate(els):
            a[i, j] = i != j and ((u[0] - v[0]) % 5, (u[1] - v[1]) % 5) in squares
    return a


def latin_square_graph(square):
    n = len(square)
    cells = [(r, c) for r in range(n) for c in range(n)]
    a = np.zeros((n * n, n * n), np.int8)
    for i, (r1, c1) in enumerate(cells):
        for j, (r2, c2) in enumerate(cells):
            a[i, j] = i != j and (r1 == r2 or c1 == c2 or
                                  square[r1][c1] == square[r2][c2])
    return a


def steiner_triple_system(v, rng):
    """Stinson's hill climbing for an STS(v)."""
    live = {x: set(range(v)) - {x} for x in range(v)}
    blocks = set()
    pair_block = {}
    while len(blocks) < v * (v - 1) // 6:
        x = rng.choice([p for p in range(v) if live[p]])
        y, z = rng.sample(sorted(live[x]), 2)
        if z not in live[y]:
            old = pair_block[frozenset((y, z))]
            blocks.remove(old)
            for a, c in itertools.combinations(old, 2):
                del pair_block[frozenset((a, c))]
                live[a].add(c)
                live[c].add(a)
        b = frozenset((x, y, z))
        blocks.add(b)
        for a, c in itertools.combinations(b, 2):
            pair_block[frozenset((a, c))] = b
            live[a].discard(c)
            live[c].discard(a)
    return sorted(tuple(sorted(b)) for b in blocks)


def disjoint_block_graph(blocks):
    n = len(blocks)
    a = np.zeros((n, n), np.int8)
    for i in range(n):
        for j in range(n):
            a[i, j] = i != j and not set(blocks[i]) & set(blocks[j])
    return a


def regular_in_switching_class(d):
    """SRG(26,10,3,4) graphs switching-equivalent to d plus an isolated vertex:
    switch on 10-sets U of d inducing a 3-regular graph such that every
    other vertex has 6 neighbours in U."""
    n = len(d)
    nb = [set(np.nonzero(d[i])[0]) for i in range(n)]
    found = []

    def rec(u, start):
        if len(u) == 10:
            if all(len(nb[y] & u) == (3 if y in u else 6) for y in range(n)):
                found.append(set(u))
            return
        for v in range(start, n):
            if len(nb[v] & u) > 3 or any(len(nb[x] & u) + (v in nb[x]) > 3 for x in u):
                continue
            u.add(v)
            rec(u, v + 1)
            u.remove(v)

    rec(set(), 0)
    return [seidel_switch(with_isolated_vertex(d), u) for u in found]


def family25(rounds, seed):
    rng = random.Random(seed)
    other = [[0, 1, 2, 3, 4], [1, 0, 3, 4, 2], [2, 4, 0, 1, 3],
             [3, 2, 4, 0, 1], [4, 3, 1, 2, 0]]
    cyclic = [[(r + c) % 5 for c in range(5)] for r in range(5)]
    tg = TwoGraphCollection(PARAMS[25])
    for a in (paley25(), latin_square_graph(cyclic), latin_square_graph(other)):
        tg.add(with_isolated_vertex(a))
    for _ in range(100):
        tg.add(disjoint_block_graph(steiner_triple_system(13, rng)))
    for _ in range(rounds):
        if len(tg.descendants) >= EXPECTED[25]:
            break
        g = tg.representatives[rng.randrange(len(tg.representatives))]
        h = seidel_switch(g, [v for v in range(26) if rng.random() < 0.5])
        for b in godsil_mckay4(h):
            tg.add(b)
    return list(tg.descendants.values())


def family26(srg25):
    out = {}
    for d in srg25:
        for g in regular_in_switching_class(d):
            if is_srg(g, PARAMS[26]):
                out.setdefault(cert(g), g)
    return list(out.values())


# ---------------------------------------------------------------- n = 28

def family28():
    pairs = list(itertools.combinations(range(8), 2))
    index = {p: i for i, p in enumerate(pairs)}
    t8 = np.zeros((28, 28), np.int8)
    for i, p in enumerate(pairs):
        for j, q in enumerate(pairs):
            t8[i, j] = i != j and bool(set(p) & set(q))

    def edge_set(edges):
        return [index[tuple(sorted(e))] for e in edges]

    matching = [(0, 1), (2, 3), (4, 5), (6, 7)]
    c8 = [(i, (i + 1) % 8) for i in range(8)]
    c3c5 = [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 6), (6, 7), (7, 3)]
    return [t8] + [seidel_switch(t8, edge_set(e)) for e in (matching, c8, c3c5)]


# ---------------------------------------------------------------- n = 29

# Cycle types (cycle length, number of cycles) of the prescribed automorphism;
# the remaining vertices are fixed. Between them these reach all six regular
# two-graphs on 30 points.
CYCLE_TYPES_29 = [(7, 4), (2, 12), (3, 8)]


def _sat_search(order, cycles, restarts, wanted, seed, queue):
    from pysat.card import CardEnc, EncType
    from pysat.formula import IDPool
    from pysat.solvers import Cadical153

    n, k, _, mu = PARAMS[29]
    pool = IDPool()
    clauses = []

    def x(i, j):
        return pool.id(("x", min(i, j), max(i, j)))

    for i in range(n):
        clauses += CardEnc.equals([x(i, j) for j in range(n) if j != i], k,
                                  vpool=pool, encoding=EncType.seqcounter).clauses
    # Common neighbours of i, j plus the edge ij equals mu for every pair;
    # with k-regularity this forces lambda = mu - 1.
    for i in range(n):
        for j in range(i + 1, n):
            ys = []
            for t in range(n):
                if t in (i, j):
                    continue
                y = pool.id(("y", i, j, t))
                clauses += [[-y, x(i, t)], [-y, x(j, t)], [y, -x(i, t), -x(j, t)]]
                ys.append(y)
            clauses += CardEnc.equals(ys + [x(i, j)], mu, vpool=pool,
                                      encoding=EncType.seqcounter).clauses
    base = list(range(n))
    v = 0
    for _ in range(cycles):
        for t in range(order):
            base[v + t] = v + (t + 1) % order
        v += order
    # Blocking single labelled solutions barely dents the space of relabelled
    # copies, so restart with randomly conjugated automorphisms instead; a new
    # variable order sends the solver to different regions.
    rng = random.Random(seed)
    for _ in range(restarts):
        relabel = list(range(n))
        rng.shuffle(relabel)
        perm = [0] * n
        for u in range(n):
            perm[relabel[u]] = relabel[base[u]]
        extra = []
        for i in range(n):
            for j in range(i + 1, n):
                a, b = perm[i], perm[j]
                if a != b and {a, b} != {i, j}:
                    extra += [[-x(i, j), x(a, b)], [x(i, j), -x(a, b)]]
        solver = Cadical153(bootstrap_with=clauses + extra)
        for _ in range(wanted):
            if not solver.solve():
                break
            model = set(l for l in solver.get_model() if l > 0)
            g = np.zeros((n, n), np.int8)
            for i in range(n):
                for j in range(i + 1, n):
                    if x(i, j) in model:
                        g[i, j] = g[j, i] = 1
            queue.put(g)
            solver.add_clause([-x(i, j) if g[i, j] else x(i, j)
                               for i in range(n) for j in range(i + 1, n)])
        solver.delete()
    queue.put(None)


def family29(timeout, restarts, per_restart, seed):
    tg = TwoGraphCollection(PARAMS[29])
    ctx = mp.get_context("fork")
    for order, cycles in CYCLE_TYPES_29:
        if len(tg.descendants) >= EXPECTED[29]:
            break
        print(f"  automorphism type {order}^{cycles}", file=sys.stderr)
        queue = ctx.Queue()
        proc = ctx.Process(target=_sat_search,
                           args=(order, cycles, restarts, per_restart, seed, queue))
        proc.start()
        while True:
            try:
                g = queue.get(timeout=timeout)
            except Exception:
                break
            if g is None:
                break
            assert is_srg(g, PARAMS[29])
            tg.add(with_isolated_vertex(g))
            if len(tg.descendants) >= EXPECTED[29]:
                break
        proc.terminate()
        proc.join()
    return list(tg.descendants.values())


# ---------------------------------------------------------------- output

def write_family(path, graphs, n):
    params = PARAMS[n]
    unique = {}
    for g in graphs:
        g = np.asarray(g, dtype=np.int8)
        if not is_srg(g, params):
            raise RuntimeError(f"graph is not an SRG{params}")
        unique.setdefault(cert(g), g)
    if len(unique) != EXPECTED[n]:
        raise RuntimeError(f"found {len(unique)} SRG{params}, expected {EXPECTED[n]}")
    lines = []
    for key in sorted(unique):
        g = nx.from_numpy_array(unique[key])
        lines.append(nx.to_graph6_bytes(g, header=False).decode().strip())
    path.write_text("\n".join(lines) + "\n")
    print(f"wrote {len(lines)} graphs to {path}", file=sys.stderr)


def main():
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--families", nargs="+", type=int, default=[16, 25, 26, 28, 29],
                    choices=sorted(PARAMS))
    ap.add_argument("--out", type=Path,
                    default=Path(__file__).resolve().parent.parent / "data" / "srg")
    ap.add_argument("--rounds", type=int, default=20000,
                    help="random switchings tried for n = 25")
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--sat-timeout", type=float, default=3600,
                    help="seconds to wait for the next SAT solution (n = 29)")
    ap.add_argument("--sat-restarts", type=int, default=40,
                    help="relabelled restarts per automorphism type (n = 29)")
    ap.add_argument("--sat-solutions", type=int, default=2,
                    help="solutions drawn per restart (n = 29)")
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)

    srg25 = None
    for n in args.families:
        print(f"family n={n}", file=sys.stderr)
        if n == 16:
            graphs = family16()
        elif n in (25, 26):
            if srg25 is None:
                srg25 = family25(args.rounds, args.seed)
            graphs = srg25 if n == 25 else family26(srg25)
        elif n == 28:
            graphs = family28()
        else:
            graphs = family29(args.sat_timeout, args.sat_restarts, args.sat_solutions,
                                  args.seed)
        write_family(args.out / f"srg{n}.g6", graphs, n)


if __name__ == "__main__":
    main()
