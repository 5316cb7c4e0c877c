"""Finite windows of the infinite cyclic cover and verification of the
weakly-slim certificate extracted from a concatenability certificate.

The cover determined by nonnegative integer weights has 0-cells at integer
levels, 1-cells a_{j,g} (the lift of generator g starting at level j and
ending at level j + w[g]) and 2-cells R_{j,i} (the lift of relator cell i
whose minimum visited level is j).  Edges are keyed by (level, reindexed
generator position) ordered lexicographically with the second coordinate
reversed; the reindexing puts the certificate's witness generators last,
in certificate order, which makes the witness lift the strict minimum of
every 2-cell boundary.
"""

from __future__ import annotations

from dataclasses import dataclass

from .minima import ConcatCertificate, replay_certificate
from .words import Presentation, is_proper_power, letter_gen


class WindowTooSmall(ValueError):
    """The window cannot contain a whole 2-cell boundary."""


class CertificateMismatch(ValueError):
    """The supplied certificate does not replay against the multisets."""


@dataclass(frozen=True)
class CoverEdge:
    level: int
    gen: int  # 0-based generator index


@dataclass(frozen=True)
class CoverCell:
    level: int  # minimum visited level of the lifted boundary
    relator: int


def _profile(pres: Presentation, weights, rel: int) -> list[int]:
    out = []
    acc = 0
    for x in pres.relators[rel]:
        acc += weights[letter_gen(x)] * (1 if x > 0 else -1)
        out.append(acc)
    return out


def relator_span(pres: Presentation, weights, rel: int) -> int:
    """Spread between the highest and lowest level visited by a lift."""
    prof = _profile(pres, weights, rel)
    return max(prof + [0]) - min(prof + [0])


@dataclass(frozen=True)
class CoverWindow:
    """All cells of the cyclic cover whose closure fits in [lo, hi]."""

    presentation: Presentation
    weights: tuple[int, ...]
    lo: int
    hi: int
    cells: tuple[CoverCell, ...]

    def levels(self) -> range:
        return range(self.lo, self.hi + 1)

    def edges(self) -> list[CoverEdge]:
        out = []
        for g, w in enumerate(self.weights):
            for j in range(self.lo, self.hi - w + 1):
                out.append(CoverEdge(j, g))
        return out

    def has_edge(self, edge: CoverEdge) -> bool:
        return self.lo <= edge.level and edge.level + self.weights[edge.gen] <= self.hi


def build_cover_window(pres: Presentation, weights, lo: int, hi: int) -> CoverWindow:
    """Window [lo, hi]: exactly the R_{j,i} with all boundary levels inside."""
    weights = tuple(int(w) for w in weights)
    if any(w < 0 for w in weights):
        raise ValueError("weights must be nonnegative; flip generators first")
    if lo > hi:
        raise ValueError("lo must be <= hi")
    spans = [relator_span(pres, weights, i) for i in range(len(pres.relators))]
    if spans and hi - lo < max(spans):
        raise WindowTooSmall(
            f"window height {hi - lo} below the maximum relator span {max(spans)}"
        )
    cells = []
    for i, span in enumerate(spans):
        for j in range(lo, hi - span + 1):
            cells.append(CoverCell(j, i))
    return CoverWindow(pres, weights, lo, hi, tuple(cells))


def lifted_boundary(window: CoverWindow, cell: CoverCell) -> tuple[tuple[CoverEdge, int], ...]:
    """Edge path of the lifted relator: (edge, direction) per letter.

    The stored rotation is walked from the anchor level that puts the
    minimum visited level at cell.level, so projecting the path (dropping
    levels) reproduces the relator word exactly.
    """
    pres, weights = window.presentation, window.weights
    prof = _profile(pres, weights, cell.relator)
    anchor = cell.level - min(prof + [0])
    out = []
    level = anchor
    for x in pres.relators[cell.relator]:
        g = letter_gen(x)
        if x > 0:
            out.append((CoverEdge(level, g), 1))
            level += weights[g]
        else:
            level -= weights[g]
            out.append((CoverEdge(level, g), -1))
    return tuple(out)


def min_edge(window: CoverWindow, cell: CoverCell, gen_priority) -> CoverEdge:
    """Strictly minimal boundary edge under the (level, priority) key.

    gen_priority maps generator index to a position 1..n; keys compare
    lexicographically with level ascending and position descending, so at
    equal level the highest-priority generator wins as the minimum.
    Distinct edges have distinct keys, so the minimum is unique.
    """
    edges = {e for e, _ in lifted_boundary(window, cell)}
    return min(edges, key=lambda e: (e.level, -gen_priority[e.gen]))


def edge_key(edge: CoverEdge, gen_priority) -> tuple[int, int]:
    return (edge.level, -gen_priority[edge.gen])


@dataclass(frozen=True)
class SlimCertificate:
    """Concatenability certificate plus the induced reindexing data."""

    concat: ConcatCertificate
    witness_by_relator: dict  # relator index -> witness generator index
    gen_priority: tuple[int, ...]  # generator index -> position 1..n
    cell_rank: dict  # relator index -> reindexed cell position (n-k+1..n)


def build_slim_certificate(
    pres: Presentation, multisets, cert: ConcatCertificate
) -> SlimCertificate:
    """Reindex generators so certificate witnesses occupy the last positions."""
    ok, why = replay_certificate(cert, multisets)
    if not ok:
        raise CertificateMismatch(why)
    n = len(pres.generators)
    k = len(pres.relators)
    witness_order = [step.gen for step in cert.witnesses]
    others = [g for g in range(n) if g not in witness_order]
    priority = [0] * n
    for pos, g in enumerate(others, start=1):
        priority[g] = pos
    for offset, g in enumerate(witness_order, start=1):
        priority[g] = n - k + offset
    witness_by_relator = {
        rel: step.gen for rel, step in zip(cert.ordering, cert.witnesses)
    }
    cell_rank = {rel: n - k + 1 + pos for pos, rel in enumerate(cert.ordering)}
    return SlimCertificate(cert, witness_by_relator, tuple(priority), cell_rank)


@dataclass(frozen=True)
class SlimCheckEntry:
    check: str
    ok: bool
    detail: str


@dataclass(frozen=True)
class SlimReport:
    ok: bool
    checks: tuple[SlimCheckEntry, ...]

    def failures(self) -> list[SlimCheckEntry]:
        return [c for c in self.checks if not c.ok]


def verify_weak_slim_certificate(
    pres: Presentation,
    weights,
    multisets,
    slim: SlimCertificate,
    window: CoverWindow,
) -> SlimReport:
    """Check the slim structure induced by the certificate on a window.

    (a) the minimal edge of every 2-cell is its witness lift at the cell's
    base level; (b) the signed traversal count of that edge equals the
    witness's positive-minus-negative copy count and is nonzero (the
    checkable surrogate for proper involvement: a nonzero signed count
    survives abelianization relative to the subcomplex); (c) the minimal
    edge of one cell appears on another cell's boundary only with a larger
    key; (d) deck translation by +1 preserves boundaries and key
    comparisons.  A side check records that no relator is a proper power
    as a cyclic word (the syntactic necessary half of the simplicity
    condition; the remainder rests on the conservativity of ordered
    targets, cited in reports).
    """
    ok, why = replay_certificate(slim.concat, multisets)
    if not ok:
        raise CertificateMismatch(why)
    by_rel = {m.relator: m for m in multisets}
    checks: list[SlimCheckEntry] = []

    power_bad = [i for i, r in enumerate(pres.relators) if is_proper_power(r)]
    checks.append(
        SlimCheckEntry(
            "no-proper-power",
            not power_bad,
            "syntactic necessary condition; the rest follows from "
            "conservativity of ordered targets"
            if not power_bad
            else f"relators {power_bad} are proper powers",
        )
    )

    min_by_cell: dict[CoverCell, CoverEdge] = {}
    ok_a = True
    details_a = []
    for cell in window.cells:
        got = min_edge(window, cell, slim.gen_priority)
        want = CoverEdge(cell.level, slim.witness_by_relator[cell.relator])
        min_by_cell[cell] = got
        if got != want:
            ok_a = False
            details_a.append(f"cell {cell}: min {got} != witness lift {want}")
    checks.append(
        SlimCheckEntry(
            "min-edge-is-witness-lift",
            ok_a,
            "; ".join(details_a) if details_a else f"{len(window.cells)} cells",
        )
    )

    ok_b = True
    details_b = []
    for cell in window.cells:
        witness = slim.witness_by_relator[cell.relator]
        target = CoverEdge(cell.level, witness)
        signed = sum(
            d for e, d in lifted_boundary(window, cell) if e == target
        )
        p, n = by_rel[cell.relator].counts.get(witness, (0, 0))
        if signed != p - n or signed == 0:
            ok_b = False
            details_b.append(
                f"cell {cell}: signed count {signed}, expected {p - n} != 0"
            )
    checks.append(
        SlimCheckEntry(
            "witness-signed-traversal",
            ok_b,
            "; ".join(details_b) if details_b else "all counts match pos - neg",
        )
    )

    owner: dict[CoverEdge, CoverCell] = {}
    for cell, edge in min_by_cell.items():
        owner[edge] = cell
    ok_c = True
    details_c = []
    for cell in window.cells:
        key_min = edge_key(min_by_cell[cell], slim.gen_priority)
        for edge in {e for e, _ in lifted_boundary(window, cell)}:
            other = owner.get(edge)
            if other is None or other == cell:
                continue
            if not edge_key(edge, slim.gen_priority) > key_min:
                ok_c = False
                details_c.append(
                    f"min edge of {other} appears on {cell} without larger key"
                )
    checks.append(
        SlimCheckEntry(
            "cross-boundary-minimality",
            ok_c,
            "; ".join(details_c) if details_c else "all cross appearances larger",
        )
    )

    ok_d = True
    details_d = []
    for cell in window.cells:
        shifted = CoverCell(cell.level + 1, cell.relator)
        if shifted not in min_by_cell:
            continue
        moved = tuple(
            (CoverEdge(e.level + 1, e.gen), d) for e, d in lifted_boundary(window, cell)
        )
        if moved != lifted_boundary(window, shifted):
            ok_d = False
            details_d.append(f"boundary of {cell} does not shift onto {shifted}")
        a = min_by_cell[cell]
        b = min_by_cell[shifted]
        if (CoverEdge(a.level + 1, a.gen)) != b:
            ok_d = False
            details_d.append(f"min edge of {cell} does not shift onto {shifted}")
    edges = window.edges()
    for e in edges[: min(len(edges), 32)]:
        for f in edges[: min(len(edges), 32)]:
            e1 = CoverEdge(e.level + 1, e.gen)
            f1 = CoverEdge(f.level + 1, f.gen)
            if window.has_edge(e1) and window.has_edge(f1):
                before = edge_key(e, slim.gen_priority) < edge_key(f, slim.gen_priority)
                after = edge_key(e1, slim.gen_priority) < edge_key(f1, slim.gen_priority)
                if before != after:
                    ok_d = False
                    details_d.append(f"key order of {e}, {f} not shift-invariant")
    checks.append(
        SlimCheckEntry(
            "deck-translation-equivariance",
            ok_d,
            "; ".join(details_d) if details_d else "shift by +1 commutes",
        )
    )

    return SlimReport(all(c.ok for c in checks), tuple(checks))
