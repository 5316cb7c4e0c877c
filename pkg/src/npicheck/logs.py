"""Labelled oriented graphs/trees/forests and Adian presentations.

A LOG edge (i, lambda, t) encodes the relator t^-1 lambda^-1 i lambda.
An Adian relator is cyclically a positive block followed by a negative
block, i.e. u v^-1 with u, v nonempty positive words.  The graphs:
graph_T joins the first letters of u and v, graph_I the last letters.
For an equal-length Adian presentation with all-ones weights the Min-mode
multiset support of a relator is exactly its T-edge and the Max-mode
support its I-edge, so a T-forest certifies Min-mode concatenability and
an I-forest Max-mode concatenability.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .homology import is_generalized_wirtinger
from .minima import MAX, MIN, CheckVerdict, HypothesisResult, check_presentation
from .orders import IntTarget, TargetAssignment
from .words import Presentation, Word, letter_gen, rotate_word


class NotAdian(ValueError):
    """A relator admits no rotation of the form (positive block)(negative block)."""


class Unsatisfiable(ValueError):
    """No reduced labelled oriented forest exists for these parameters."""


@dataclass(frozen=True)
class Log:
    """Labelled oriented graph: edges are (initial, label, terminal) vertex indices."""

    vertices: tuple[str, ...]
    edges: tuple[tuple[int, int, int], ...]

    def vertex_index(self, name: str) -> int:
        return self.vertices.index(name)


def log_to_presentation(log: Log) -> Presentation:
    """One relator t^-1 lambda^-1 i lambda per edge; generators are the vertices."""
    rels: list[Word] = []
    for i, lam, t in log.edges:
        rels.append((-(t + 1), -(lam + 1), i + 1, lam + 1))
    return Presentation(log.vertices, tuple(rels))


def log_is_reduced(log: Log) -> tuple[bool, list[tuple[int, str]]]:
    """Reduced means i != lambda and t != lambda on every edge."""
    diags: list[tuple[int, str]] = []
    for idx, (i, lam, t) in enumerate(log.edges):
        if i == lam:
            diags.append((idx, "label-equals-initial"))
        if t == lam:
            diags.append((idx, "label-equals-terminal"))
    return not diags, diags


def underlying_forest(log: Log) -> bool:
    """True iff the i--t multigraph of the LOG is a forest."""
    graph = Multigraph(
        len(log.vertices),
        tuple(tuple(sorted((i, t))) for i, _, t in log.edges),
    )
    return is_forest(graph).ok


@dataclass(frozen=True)
class AdianPair:
    u: Word  # positive block
    v: Word  # positive block; the relator is cyclically u v^-1
    rotation: int  # rotation of the stored relator realizing u v^-1


@dataclass(frozen=True)
class AdianForm:
    generators: tuple[str, ...]
    pairs: tuple[AdianPair, ...]


def adian_normalize(pres: Presentation) -> AdianForm:
    """Decompose every relator as u v^-1 with u, v nonempty positive words.

    A cyclic word admits such a rotation iff it has exactly one positive
    and one negative run, which makes the decomposition canonical; the
    returned rotation starts the positive run.
    """
    pairs: list[AdianPair] = []
    for idx, rel in enumerate(pres.relators):
        found = None
        for k in range(len(rel)):
            rot = rotate_word(rel, k)
            split = None
            for pos in range(1, len(rot)):
                if rot[pos] < 0:
                    split = pos
                    break
            if rot and rot[0] > 0 and split is not None and all(x < 0 for x in rot[split:]):
                found = (rot, split, k)
                break
        if found is None:
            raise NotAdian(
                f"relator {idx} is not cyclically (positive block)(negative block)"
            )
        rot, split, k = found
        u = rot[:split]
        v = tuple(-x for x in reversed(rot[split:]))
        pairs.append(AdianPair(u, v, k))
    return AdianForm(pres.generators, pairs)


@dataclass(frozen=True)
class Multigraph:
    """Undirected multigraph: loops and parallel edges allowed."""

    vertex_count: int
    edges: tuple[tuple[int, int], ...]  # sorted vertex pairs


def _adian_form_of(source: AdianForm | Log) -> AdianForm:
    if isinstance(source, Log):
        return adian_normalize(log_to_presentation(source))
    return source


def graph_I(source: AdianForm | Log) -> Multigraph:
    """Edges join the last letters of u and v (for a LOG edge: {lambda, t})."""
    form = _adian_form_of(source)
    edges = tuple(
        tuple(sorted((letter_gen(p.u[-1]), letter_gen(p.v[-1])))) for p in form.pairs
    )
    return Multigraph(len(form.generators), edges)


def graph_T(source: AdianForm | Log) -> Multigraph:
    """Edges join the first letters of u and v (for a LOG edge: {i, lambda})."""
    form = _adian_form_of(source)
    edges = tuple(
        tuple(sorted((letter_gen(p.u[0]), letter_gen(p.v[0])))) for p in form.pairs
    )
    return Multigraph(len(form.generators), edges)


@dataclass(frozen=True)
class ForestCheck:
    ok: bool
    cycle: tuple[tuple[int, int], ...] | None  # witness edges when not a forest


def is_forest(graph: Multigraph) -> ForestCheck:
    """Union-find acyclicity; loops and parallel edges count as cycles."""
    parent = list(range(graph.vertex_count))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    adjacency: dict[int, list[tuple[int, tuple[int, int]]]] = {}
    for edge in graph.edges:
        a, b = edge
        if a == b:
            return ForestCheck(False, (edge,))
        ra, rb = find(a), find(b)
        if ra == rb:
            # walk the accepted forest from a to b for the witness path
            path = _forest_path(adjacency, a, b)
            return ForestCheck(False, tuple(path + [edge]))
        parent[ra] = rb
        adjacency.setdefault(a, []).append((b, edge))
        adjacency.setdefault(b, []).append((a, edge))
    return ForestCheck(True, None)


def _forest_path(adjacency, start: int, goal: int) -> list[tuple[int, int]]:
    prev: dict[int, tuple[int, tuple[int, int]]] = {start: (start, (start, start))}
    queue = [start]
    while queue:
        v = queue.pop(0)
        if v == goal:
            break
        for w, edge in adjacency.get(v, []):
            if w not in prev:
                prev[w] = (v, edge)
                queue.append(w)
    path = []
    v = goal
    while v != start:
        v, edge = prev[v]
        path.append(edge)
    path.reverse()
    return path


@dataclass(frozen=True)
class AdianVerdict:
    status: str  # "npi" | "not-decided" | "hypothesis-failure"
    hypotheses: tuple[HypothesisResult, ...]
    t_forest: ForestCheck | None
    i_forest: ForestCheck | None
    min_check: CheckVerdict | None
    max_check: CheckVerdict | None


def adian_npi_check(pres: Presentation) -> AdianVerdict:
    """Equal-length Adian route to non-positive immersions.

    Requires an Adian decomposition with len(u) = len(v) everywhere and H1
    free abelian of rank n - k; then a T-forest forces Min-mode weak
    concatenability with all-ones weights and an I-forest Max-mode.  The
    concatenability run is a mandatory internal cross-check: it must
    succeed whenever the corresponding forest test does.
    """
    hyps: list[HypothesisResult] = []
    try:
        form = adian_normalize(pres)
    except NotAdian as exc:
        hyps.append(HypothesisResult("adian-form", "fail", str(exc)))
        return AdianVerdict("hypothesis-failure", tuple(hyps), None, None, None, None)
    hyps.append(HypothesisResult("adian-form", "pass", "all relators are u v^-1"))

    unequal = [i for i, p in enumerate(form.pairs) if len(p.u) != len(p.v)]
    if unequal:
        hyps.append(
            HypothesisResult(
                "equal-block-lengths", "fail", f"len(u) != len(v) for relators {unequal}"
            )
        )
        return AdianVerdict("hypothesis-failure", tuple(hyps), None, None, None, None)
    hyps.append(HypothesisResult("equal-block-lengths", "pass", "len(u) = len(v) throughout"))

    wirt = is_generalized_wirtinger(pres)
    hyps.append(
        HypothesisResult(
            "h1-free-abelian-rank-n-k", "pass" if wirt.ok else "fail", wirt.reason
        )
    )
    if not wirt.ok:
        return AdianVerdict("hypothesis-failure", tuple(hyps), None, None, None, None)

    t_check = is_forest(graph_T(form))
    i_check = is_forest(graph_I(form))
    assignment = TargetAssignment.all_ones(pres)
    target = IntTarget()
    min_verdict = None
    max_verdict = None
    if t_check.ok:
        min_verdict = check_presentation(pres, target, assignment, MIN)
        if min_verdict.status != "concatenable":
            raise AssertionError(
                "T-forest without Min-mode concatenability: internal cross-check failed"
            )
    if i_check.ok:
        max_verdict = check_presentation(pres, target, assignment, MAX)
        if max_verdict.status != "concatenable":
            raise AssertionError(
                "I-forest without Max-mode concatenability: internal cross-check failed"
            )
    status = "npi" if (t_check.ok or i_check.ok) else "not-decided"
    return AdianVerdict(status, tuple(hyps), t_check, i_check, min_verdict, max_verdict)


@dataclass(frozen=True)
class PresentationGraph:
    """Simple graph with integer edge labels m >= 2 (Artin presentation data)."""

    vertices: tuple[str, ...]
    edges: tuple[tuple[int, int, int], ...]  # (u, v, m) with u != v


def artin_presentation(graph: PresentationGraph) -> Presentation:
    """One relator (sts...)(tst...)^-1 with m letters per block per edge."""
    rels: list[Word] = []
    for u, v, m in graph.edges:
        if u == v:
            raise ValueError("presentation graphs are simple: no loops")
        if m < 2:
            raise ValueError("edge labels must be >= 2")
        block_u = tuple((u + 1) if i % 2 == 0 else (v + 1) for i in range(m))
        block_v = tuple((v + 1) if i % 2 == 0 else (u + 1) for i in range(m))
        rels.append(block_u + tuple(-x for x in reversed(block_v)))
    return Presentation(graph.vertices, tuple(rels))


def lof_random(n_vertices: int, n_edges: int, rng: random.Random) -> Log:
    """Uniform reduced labelled oriented forest by rejection sampling.

    Uniform over forests with the requested vertex and edge counts, then
    uniform orientations and labels, rejecting until every edge satisfies
    label != initial and label != terminal.
    """
    if n_vertices < 1:
        raise ValueError("need at least one vertex")
    if n_edges < 0 or n_edges > max(n_vertices - 1, 0):
        raise Unsatisfiable(f"no forest on {n_vertices} vertices has {n_edges} edges")
    if n_edges >= 1 and n_vertices < 3:
        raise Unsatisfiable("a reduced edge needs a label distinct from both endpoints")
    names = tuple(_vertex_name(i) for i in range(n_vertices))
    all_pairs = [(a, b) for a in range(n_vertices) for b in range(a + 1, n_vertices)]
    while True:
        pairs = rng.sample(all_pairs, n_edges) if n_edges else []
        if not _pairs_form_forest(n_vertices, pairs):
            continue
        edges = []
        ok = True
        for a, b in pairs:
            i, t = (a, b) if rng.random() < 0.5 else (b, a)
            lam = rng.randrange(n_vertices)
            if lam == i or lam == t:
                ok = False
                break
            edges.append((i, lam, t))
        if ok:
            return Log(names, tuple(edges))


def _vertex_name(i: int) -> str:
    name = ""
    i += 1
    while i:
        i, r = divmod(i - 1, 26)
        name = chr(ord("a") + r) + name
    return name


def _pairs_form_forest(n: int, pairs) -> bool:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in pairs:
        ra, rb = find(a), find(b)
        if ra == rb:
            return False
        parent[ra] = rb
    return True
