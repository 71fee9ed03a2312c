"""Independent brute-force reference implementations used to check the
library. Everything here recomputes from first definitions (BFS distance
matrices, triangle counting, closed-form rank correlation) without reusing
any library code paths."""

from __future__ import annotations

import ast
import io
import math
import tokenize
from collections import deque


def adjacency(n, edges):
    adj = [[] for _ in range(n)]
    for p, c in edges:
        adj[p].append(c)
        adj[c].append(p)
    return adj


def all_pairs_bfs(n, edges):
    """Distance matrix by running BFS from every node."""
    adj = adjacency(n, edges)
    dist = [[-1] * n for _ in range(n)]
    for s in range(n):
        row = dist[s]
        row[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for v in adj[u]:
                if row[v] < 0:
                    row[v] = row[u] + 1
                    queue.append(v)
    return dist


def distance_stats(n, edges):
    """(diameter, radius, mean eccentricity, mean pairwise distance)."""
    dist = all_pairs_bfs(n, edges)
    if n == 1:
        return 0, 0, 0.0, 0.0
    ecc = [max(row) for row in dist]
    total = sum(dist[i][j] for i in range(n) for j in range(i + 1, n))
    return max(ecc), min(ecc), sum(ecc) / n, total / (n * (n - 1) / 2)


def degrees(n, edges):
    deg = [0] * n
    for p, c in edges:
        deg[p] += 1
        deg[c] += 1
    return deg


def entropy_of_counts(values):
    """Shannon entropy in nats of the value distribution."""
    counts = {}
    for v in values:
        counts[v] = counts.get(v, 0) + 1
    total = len(values)
    return -sum((c / total) * math.log(c / total) for c in counts.values())


def local_clustering(n, edges):
    """Per-node triangle-based clustering straight from the definition."""
    neigh = [set() for _ in range(n)]
    for p, c in edges:
        neigh[p].add(c)
        neigh[c].add(p)
    out = []
    for u in range(n):
        k = len(neigh[u])
        if k < 2:
            out.append(0.0)
            continue
        links = 0
        nu = sorted(neigh[u])
        for i in range(len(nu)):
            for j in range(i + 1, len(nu)):
                if nu[j] in neigh[nu[i]]:
                    links += 1
        out.append(2.0 * links / (k * (k - 1)))
    return out


def transitivity(n, edges):
    neigh = [set() for _ in range(n)]
    for p, c in edges:
        neigh[p].add(c)
        neigh[c].add(p)
    # closed wedges: each triangle is counted once per apex, i.e. 3 times
    closed = 0
    for u in range(n):
        for v in neigh[u]:
            for w in neigh[u]:
                if v < w and w in neigh[v]:
                    closed += 1
    triangles = closed / 3
    triples = sum(len(s) * (len(s) - 1) // 2 for s in neigh)
    if triples == 0:
        return 0.0
    return 3.0 * triangles / triples


def assortativity(n, edges):
    """Pearson correlation of endpoint degrees over both edge orientations."""
    deg = degrees(n, edges)
    xs, ys = [], []
    for p, c in edges:
        xs.extend((deg[p], deg[c]))
        ys.extend((deg[c], deg[p]))
    if not xs:
        return 0.0
    mx = sum(xs) / len(xs)
    my = sum(ys) / len(ys)
    vx = sum((x - mx) ** 2 for x in xs) / len(xs)
    vy = sum((y - my) ** 2 for y in ys) / len(ys)
    if vx <= 0 or vy <= 0:
        return 0.0
    cov = sum((x - mx) * (y - my) for x, y in zip(xs, ys)) / len(xs)
    return cov / math.sqrt(vx * vy)


def spearman_no_ties(x, y):
    """Closed form 1 - 6*sum(d^2)/(n(n^2-1)); valid only without ties."""
    n = len(x)
    rx = {v: i + 1 for i, v in enumerate(sorted(x))}
    ry = {v: i + 1 for i, v in enumerate(sorted(y))}
    d2 = sum((rx[a] - ry[b]) ** 2 for a, b in zip(x, y))
    return 1.0 - 6.0 * d2 / (n * (n * n - 1))


def pearson(x, y):
    n = len(x)
    mx = sum(x) / n
    my = sum(y) / n
    vx = sum((a - mx) ** 2 for a in x)
    vy = sum((b - my) ** 2 for b in y)
    if vx == 0 or vy == 0:
        return 0.0
    cov = sum((a - mx) * (b - my) for a, b in zip(x, y))
    return cov / math.sqrt(vx * vy)


def rank_with_ties(values):
    """Average ranks, 1-based; ties get the mean of their positions."""
    order = sorted(range(len(values)), key=lambda i: values[i])
    ranks = [0.0] * len(values)
    i = 0
    while i < len(values):
        j = i
        while j + 1 < len(values) and values[order[j + 1]] == values[order[i]]:
            j += 1
        avg = (i + j) / 2 + 1
        for k in range(i, j + 1):
            ranks[order[k]] = avg
        i = j + 1
    return ranks


def spearman_with_ties(x, y):
    """Pearson correlation of average ranks; the general definition."""
    return pearson(rank_with_ties(x), rank_with_ties(y))


_LAYOUT_NAMES = {"COMMENT", "NL", "NEWLINE", "INDENT", "DEDENT",
                 "ENDMARKER", "ENCODING"}

_DEF_NODES = (ast.FunctionDef, ast.AsyncFunctionDef)


def nonlayout_token_count(src):
    toks = tokenize.generate_tokens(io.StringIO(src).readline)
    return sum(1 for t in toks if tokenize.tok_name[t.type] not in _LAYOUT_NAMES)


def _increment(node):
    if isinstance(node, (ast.If, ast.While, ast.For, ast.AsyncFor,
                         ast.IfExp, ast.ExceptHandler)):
        return 1
    if isinstance(node, ast.comprehension):
        return 1 + len(node.ifs)
    if isinstance(node, ast.BoolOp):
        return len(node.values) - 1
    if isinstance(node, ast.Match):
        return max(len(node.cases) - 1, 0)
    return 0


def _decisions_below(node):
    """Recursive decision-point count, stopping at nested function defs."""
    total = 0
    for child in ast.iter_child_nodes(node):
        if isinstance(child, _DEF_NODES):
            continue
        total += _increment(child) + _decisions_below(child)
    return total


def _unit_tokens(code, unit):
    """Retokenize the unit's own source slice instead of indexing into the
    module token stream; async defs drop the leading keyword."""
    seg = ast.get_source_segment(code, unit)
    if isinstance(unit, ast.AsyncFunctionDef):
        seg = seg.split(None, 1)[1]
    return nonlayout_token_count(seg)


def _params(unit):
    a = unit.args
    return (len(a.posonlyargs) + len(a.args) + len(a.kwonlyargs)
            + (a.vararg is not None) + (a.kwarg is not None))


def complexity_six(code):
    """The six complexity features recomputed from first definitions."""
    tree = ast.parse(code)
    units = [n for n in ast.walk(tree) if isinstance(n, _DEF_NODES)]
    token_total = nonlayout_token_count(code)
    if units:
        ccs = [1 + _decisions_below(u) for u in units]
        toks = [_unit_tokens(code, u) for u in units]
        params = [_params(u) for u in units]
        return {
            "cc_total": sum(ccs),
            "cc_mean": sum(ccs) / len(units),
            "token_total": token_total,
            "token_mean": sum(toks) / len(units),
            "param_total": sum(params),
            "param_mean": sum(params) / len(units),
        }
    cc = 1 + _decisions_below(tree)
    return {
        "cc_total": cc,
        "cc_mean": float(cc),
        "token_total": token_total,
        "token_mean": float(token_total),
        "param_total": 0,
        "param_mean": 0.0,
    }
