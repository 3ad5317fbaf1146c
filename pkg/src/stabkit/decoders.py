"""Syndrome decoding: exhaustive minimum-weight lookup tables and exact
minimum-weight perfect matching on surface-code lattices.

Tie-breaking is the same everywhere: minimum weight first, then the
enumeration order of `pauli.enumerate_paulis` (ascending support, letters
X < Y < Z), so decoded recoveries are reproducible golden values.

Matching model: flagged Z-checks are the defects of the X-error sector and
may match each other or the top/bottom (X-type) boundaries; flagged
X-checks are the Z-sector defects and match each other or the left/right
boundaries.  Edge weights count the data qubits on a shortest lattice path.
Unused virtual boundary nodes pair among themselves at zero cost, which
the solver realises by letting every defect take its boundary option
independently.  The matching itself is solved exactly: edges that cannot
beat two boundary matches are pruned, the defect graph splits into
connected components, and each component is solved by bitmask dynamic
programming.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

from .code_library import SurfaceLayout
from .pauli import PauliOperator, enumerate_paulis, format_sparse, identity
from .stabilizer_code import StabilizerCode, Syndrome

LOOKUP_SYNDROME_GUARD = 20
DEFAULT_DEFECT_CAP = 16


class DecoderError(Exception):
    pass


class InstanceTooLargeError(DecoderError):
    """Defect count above the exact solver's cap."""


# --- lookup decoding ---------------------------------------------------------


@dataclass
class LookupTable:
    """Syndrome -> minimum-weight recovery, built by exhaustive enumeration."""

    code: StabilizerCode
    max_weight: int
    table: dict[int, PauliOperator]

    def to_json(self) -> str:
        rows = {
            str(Syndrome.from_int(value, self.code.m)): format_sparse(op)
            for value, op in sorted(self.table.items())
        }
        return json.dumps(
            {"code": self.code.name, "max_weight": self.max_weight, "recoveries": rows},
            indent=2,
        )


def build_lookup(code: StabilizerCode, max_weight: int | None = None) -> LookupTable:
    """Enumerate errors by ascending weight; the first error seen per
    syndrome is stored.  With max_weight None, enumeration continues until
    every possible syndrome has an entry (or weight n is exhausted).
    """
    if code.m > LOOKUP_SYNDROME_GUARD:
        raise DecoderError(
            f"{code.m}-bit syndromes need a 2^{code.m} table; guard is 2^{LOOKUP_SYNDROME_GUARD}"
        )
    fill_all = max_weight is None
    limit = code.n if fill_all else max_weight
    table: dict[int, PauliOperator] = {0: identity(code.n)}
    total = 1 << code.m
    for w in range(1, limit + 1):
        for p in enumerate_paulis(code.n, w):
            table.setdefault(code.syndrome_value(p), p)
        if fill_all and len(table) == total:
            break
    return LookupTable(code=code, max_weight=limit, table=table)


def lookup_decode(table: LookupTable, s: Syndrome) -> tuple[PauliOperator, bool]:
    """Recovery for s plus a matched flag; a miss returns the identity."""
    if len(s) != table.code.m:
        raise ValueError(f"syndrome has {len(s)} bits, code has {table.code.m} generators")
    recovery = table.table.get(s.value)
    if recovery is None:
        return identity(table.code.n), False
    return recovery, True


class LookupDecoder:
    name = "lookup"

    def __init__(self, code: StabilizerCode, max_weight: int | None = None):
        self.table = build_lookup(code, max_weight)
        self.code = code
        self._identity = identity(code.n)

    def decode(self, s: Syndrome) -> PauliOperator:
        recovery, _ = lookup_decode(self.table, s)
        return recovery

    def decode_value(self, value: int) -> PauliOperator:
        """Packed-syndrome entry point (bit i = generator i)."""
        return self.table.table.get(value, self._identity)


# --- exact minimum-weight matching ------------------------------------------


def minimum_weight_matching(
    dist: Sequence[Sequence[int]],
    boundary: Sequence[int],
    cap: int = DEFAULT_DEFECT_CAP,
) -> tuple[int, list[tuple[int, int | None]]]:
    """Exact minimum-cost matching of defects to each other or the boundary.

    dist[i][j] is the pair cost, boundary[i] the cost of sending defect i
    to its boundary.  Returns (total cost, pairs) with None marking a
    boundary match.  Raises InstanceTooLargeError above `cap` defects.
    """
    k = len(boundary)
    if k > cap:
        raise InstanceTooLargeError(f"instance too large: {k} defects exceed cap {cap}")
    if k == 0:
        return 0, []

    # An edge can only help if it beats two boundary matches; dropping ties
    # keeps the optimal cost and splits the graph into small components.
    adjacency = [[] for _ in range(k)]
    for i in range(k):
        for j in range(i + 1, k):
            if dist[i][j] < boundary[i] + boundary[j]:
                adjacency[i].append(j)
                adjacency[j].append(i)

    seen = [False] * k
    total = 0
    pairs: list[tuple[int, int | None]] = []
    for start in range(k):
        if seen[start]:
            continue
        component = []
        stack = [start]
        seen[start] = True
        while stack:
            v = stack.pop()
            component.append(v)
            for w in adjacency[v]:
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
        component.sort()
        cost, local_pairs = _match_component(component, dist, boundary, adjacency)
        total += cost
        pairs.extend(local_pairs)
    return total, pairs


def _match_component(
    nodes: list[int], dist, boundary, adjacency
) -> tuple[int, list[tuple[int, int | None]]]:
    """Memoized DP over one connected component, always resolving the lowest
    unmatched defect.  Pair options are restricted to surviving edges: a
    dropped edge costs at least as much as two boundary matches, so some
    optimal solution never uses one.
    """
    local = {node: i for i, node in enumerate(nodes)}
    adj = [
        [(local[w], dist[v][w]) for w in adjacency[v] if w in local] for v in nodes
    ]
    bnd = [boundary[v] for v in nodes]
    full = (1 << len(nodes)) - 1
    memo: dict[int, tuple[int, tuple[int, int]]] = {0: (0, (0, -1))}

    def solve(mask: int) -> int:
        hit = memo.get(mask)
        if hit is not None:
            return hit[0]
        low = (mask & -mask).bit_length() - 1
        rest = mask ^ (1 << low)
        cost = bnd[low] + solve(rest)
        pick = (low, -1)
        for other, w in adj[low]:
            bit = 1 << other
            if rest & bit:
                trial = w + solve(rest ^ bit)
                if trial < cost:
                    cost = trial
                    pick = (low, other)
        memo[mask] = (cost, pick)
        return cost

    best = solve(full)
    pairs = []
    mask = full
    while mask:
        low, other = memo[mask][1]
        if other < 0:
            pairs.append((nodes[low], None))
            mask ^= 1 << low
        else:
            pairs.append((nodes[low], nodes[other]))
            mask ^= (1 << low) | (1 << other)
    return best, pairs


# --- surface-code MWPM -------------------------------------------------------


@dataclass(frozen=True)
class MatchingProblem:
    """One sector's matching instance, exposed for inspection and tests."""

    sector: str  # "X": X-errors / flagged Z-checks; "Z": Z-errors / flagged X-checks
    defects: tuple[tuple[str, tuple[int, int]], ...]  # (check id, coordinate)
    boundary_costs: tuple[int, ...]
    pair_costs: tuple[tuple[int, ...], ...]


class _Sector:
    """Precomputed geometry for one check species of a surface layout."""

    def __init__(self, layout: SurfaceLayout, check_kind: str):
        side = 2 * layout.lam - 1
        self.sector = "X" if check_kind == "Z" else "Z"  # error species decoded
        self.generator_indices = []
        self.coords = []
        self.ids = []
        for gi, rec in enumerate(layout.ancilla_records):
            if rec.kind == check_kind:
                self.generator_indices.append(gi)
                self.coords.append(rec.coord)
                self.ids.append(rec.ancilla_id)
        coord_to_data = {coord: q for q, coord in layout.data_coords.items()}

        def data_bit(coord) -> int:
            return 1 << (coord_to_data[coord] - 1)

        k = len(self.coords)
        # Z-checks pair through vertical steps to the top/bottom boundary;
        # X-checks through horizontal steps to the left/right boundary.
        axis = 0 if check_kind == "Z" else 1
        self.pair_cost = [[0] * k for _ in range(k)]
        self.pair_chain = [[0] * k for _ in range(k)]
        for i in range(k):
            for j in range(k):
                if i != j:
                    self.pair_cost[i][j] = (
                        abs(self.coords[i][0] - self.coords[j][0])
                        + abs(self.coords[i][1] - self.coords[j][1])
                    ) // 2
                    self.pair_chain[i][j] = self._route(
                        self.coords[i], self.coords[j], data_bit
                    )
        self.boundary_cost = []
        self.boundary_chain = []
        for r, c in self.coords:
            along = r if axis == 0 else c
            near = (along + 1) // 2  # chain length exiting toward coordinate 0
            far = (side - along) // 2
            # Ties go to the larger-coordinate side (bottom / right).
            step = -1 if near < far else 1
            mask = 0
            pos = [r, c]
            pos[axis] += step
            while 0 <= pos[axis] < side:
                mask |= data_bit(tuple(pos))
                pos[axis] += 2 * step
            self.boundary_cost.append(min(near, far))
            self.boundary_chain.append(mask)

    @staticmethod
    def _route(a, b, data_bit) -> int:
        """Data qubits on a rows-first Manhattan path between two checks."""
        mask = 0
        r, c = a
        r2, c2 = b
        step = 2 if r2 > r else -2
        while r != r2:
            mask |= data_bit((r + step // 2, c))
            r += step
        step = 2 if c2 > c else -2
        while c != c2:
            mask |= data_bit((r, c + step // 2))
            c += step
        return mask

    def defects_of(self, syndrome_value: int) -> list[int]:
        return [
            i
            for i, gi in enumerate(self.generator_indices)
            if (syndrome_value >> gi) & 1
        ]

    def problem(self, defects: list[int]) -> MatchingProblem:
        return MatchingProblem(
            sector=self.sector,
            defects=tuple((self.ids[i], self.coords[i]) for i in defects),
            boundary_costs=tuple(self.boundary_cost[i] for i in defects),
            pair_costs=tuple(
                tuple(self.pair_cost[i][j] for j in defects) for i in defects
            ),
        )

    def correction_mask(self, defects: list[int], cap: int) -> int:
        dist = [[self.pair_cost[i][j] for j in defects] for i in defects]
        boundary = [self.boundary_cost[i] for i in defects]
        _, pairs = minimum_weight_matching(dist, boundary, cap=cap)
        mask = 0
        for a, b in pairs:
            if b is None:
                mask ^= self.boundary_chain[defects[a]]
            else:
                mask ^= self.pair_chain[defects[a]][defects[b]]
        return mask


class MwpmDecoder:
    """Exact MWPM decoder for codes carrying a SurfaceLayout."""

    name = "mwpm"

    def __init__(self, code: StabilizerCode, defect_cap: int = DEFAULT_DEFECT_CAP):
        if code.layout is None:
            raise DecoderError(f"code {code.name!r} has no lattice layout; MWPM needs one")
        self.code = code
        self.defect_cap = defect_cap
        self._z_checks = _Sector(code.layout, "Z")  # X-error sector
        self._x_checks = _Sector(code.layout, "X")  # Z-error sector

    def matching_problems(self, s: Syndrome) -> dict[str, MatchingProblem]:
        value = s.value
        return {
            "X": self._z_checks.problem(self._z_checks.defects_of(value)),
            "Z": self._x_checks.problem(self._x_checks.defects_of(value)),
        }

    def decode(self, s: Syndrome) -> PauliOperator:
        if len(s) != self.code.m:
            raise ValueError(f"syndrome has {len(s)} bits, code has {self.code.m} generators")
        return self.decode_value(s.value)

    def decode_value(self, value: int) -> PauliOperator:
        """Packed-syndrome entry point (bit i = generator i)."""
        x_mask = self._z_checks.correction_mask(
            self._z_checks.defects_of(value), self.defect_cap
        )
        z_mask = self._x_checks.correction_mask(
            self._x_checks.defects_of(value), self.defect_cap
        )
        return PauliOperator(self.code.n, x_mask, z_mask, 0)


def mwpm_decode(
    code: StabilizerCode, s: Syndrome, defect_cap: int = DEFAULT_DEFECT_CAP
) -> PauliOperator:
    return MwpmDecoder(code, defect_cap).decode(s)


def decode(decoder, s: Syndrome) -> PauliOperator:
    """Uniform entry point over lookup and matching decoders."""
    return decoder.decode(s)
