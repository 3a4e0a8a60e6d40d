"""The three hardness constructions with brute-force source-game solvers.

Each builder emits the reduction graph, the threshold k, and a total role
map; the source games (POS CNF and Generalised Hex) are solved exactly at
desk scale so winning strategies can be lifted onto the reduction graphs
and checked against adversarial play.  Lifted strategies keep a virtual
source-game state that ignores their own arbitrary moves, the usual device
for strategy transfer.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from .engine import (
    PASS,
    ColorVertex,
    GameConfig,
    Move,
    Player,
    Strategy,
    legal_moves,
)
from .graphs import (
    FormatError,
    Graph,
    GraphDocument,
    Planarity,
    bits,
    component_of,
    mask_of,
    planarity_check,
)


# -- instances ------------------------------------------------------------------


@dataclass(frozen=True)
class CnfInstance:
    """All-positive CNF: clauses are sets of variable indices."""

    variable_count: int
    clauses: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        for cl in self.clauses:
            if not cl:
                raise ValueError("clauses must be nonempty")
            if any(not 0 <= v < self.variable_count for v in cl):
                raise ValueError("clause variable out of range")
            if len(set(cl)) != len(cl):
                raise ValueError("repeated variable inside a clause")

    @staticmethod
    def of(variable_count: int, clauses) -> "CnfInstance":
        return CnfInstance(variable_count,
                           tuple(tuple(sorted(set(c))) for c in clauses))


@dataclass(frozen=True)
class HexInstance:
    """Generalised Hex input: planar-ish graph with a nonadjacent outside pair."""

    h: Graph
    s: int
    t: int

    def __post_init__(self):
        if not (0 <= self.s < self.h.n and 0 <= self.t < self.h.n) or self.s == self.t:
            raise ValueError("s and t must be distinct vertices of h")
        if self.h.has_edge(self.s, self.t):
            raise ValueError("outside pair must be nonadjacent")
        g_plus = Graph.from_edges(self.h.n, self.h.edges() + [(self.s, self.t)])
        if planarity_check(g_plus) is Planarity.NON_PLANAR:
            raise ValueError("h + st must not be recognisably non-planar")


@dataclass
class ReductionOutput:
    kind: str  # bipartite | split | planar
    g: Graph
    k: int
    role_map: dict[int, str]
    # wiring for strategy lifting
    var_count: int = 0
    pair_partner: dict[int, int] = field(default_factory=dict)
    source_cnf: CnfInstance | None = None
    source_hex: HexInstance | None = None
    hex_vertices: int = 0  # mask of the embedded (padded) H
    s_group: int = 0
    t_group: int = 0
    hub_leaves: dict[int, int] = field(default_factory=dict)
    s_vertex: int = -1
    t_vertex: int = -1


# -- source-game solvers -----------------------------------------------------------


class CnfGameSolver:
    """Memoised minimax for POS CNF: Alice sets variables true, Bob false."""

    def __init__(self, cnf: CnfInstance, max_vars: int = 16):
        if cnf.variable_count > max_vars:
            raise ValueError(f"too many variables (> {max_vars})")
        self.cnf = cnf
        self.clause_masks = [mask_of(c) for c in cnf.clauses]
        self.full = (1 << cnf.variable_count) - 1
        self.memo: dict[tuple[int, int], bool] = {}

    def _alice_wins(self, true_mask: int, false_mask: int) -> bool:
        if all(cm & true_mask for cm in self.clause_masks):
            return True
        if any(cm & ~false_mask == 0 for cm in self.clause_masks):
            return False
        free = self.full & ~true_mask & ~false_mask
        if not free:
            return all(cm & true_mask for cm in self.clause_masks)
        key = (true_mask, false_mask)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        alice = true_mask.bit_count() == false_mask.bit_count()
        if alice:
            res = any(self._alice_wins(true_mask | (1 << v), false_mask)
                      for v in bits(free))
        else:
            res = all(self._alice_wins(true_mask, false_mask | (1 << v))
                      for v in bits(free))
        self.memo[key] = res
        return res

    @property
    def winner(self) -> Player:
        return Player.ALICE if self._alice_wins(0, 0) else Player.BOB

    def best_variable(self, true_mask: int, false_mask: int) -> int:
        """Mover's lowest outcome-preserving variable (winning when possible)."""
        free = self.full & ~true_mask & ~false_mask
        if not free:
            raise ValueError("no free variable")
        alice = true_mask.bit_count() == false_mask.bit_count()
        fallback = None
        for v in bits(free):
            if fallback is None:
                fallback = v
            if alice and self._alice_wins(true_mask | (1 << v), false_mask):
                return v
            if not alice and not self._alice_wins(true_mask, false_mask | (1 << v)):
                return v
        return fallback


def solve_poscnf(cnf: CnfInstance) -> Player:
    """Winner of the POS CNF game; an empty formula is vacuously true."""
    return CnfGameSolver(cnf).winner


class HexGameSolver:
    """Memoised minimax for Generalised Hex; s and t start red."""

    def __init__(self, hx: HexInstance, max_vertices: int = 18):
        if hx.h.n > max_vertices:
            raise ValueError(f"hex instance too large (> {max_vertices})")
        self.hx = hx
        self.g = hx.h
        self.st = (1 << hx.s) | (1 << hx.t)
        self.playable = self.g.full_mask & ~self.st
        self.memo: dict[tuple[int, int], bool] = {}

    def _connected_st(self, within: int) -> bool:
        comp = component_of(self.g.adj, 1 << self.hx.s, within)
        return bool(comp >> self.hx.t & 1)

    def _alice_wins(self, red: int, blue: int) -> bool:
        # red excludes s,t; they are permanently red
        red_all = red | self.st
        if self._connected_st(red_all):
            return True
        if not self._connected_st(self.g.full_mask & ~blue):
            return False
        free = self.playable & ~red & ~blue
        if not free:
            return self._connected_st(red_all)
        key = (red, blue)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        alice = red.bit_count() == blue.bit_count()
        if alice:
            res = any(self._alice_wins(red | (1 << v), blue) for v in bits(free))
        else:
            res = all(self._alice_wins(red, blue | (1 << v)) for v in bits(free))
        self.memo[key] = res
        return res

    @property
    def winner(self) -> Player:
        return Player.ALICE if self._alice_wins(0, 0) else Player.BOB

    def best_vertex(self, red: int, blue: int) -> int:
        free = self.playable & ~red & ~blue
        if not free:
            raise ValueError("no free vertex")
        alice = red.bit_count() == blue.bit_count()
        fallback = None
        for v in bits(free):
            if fallback is None:
                fallback = v
            if alice and self._alice_wins(red | (1 << v), blue):
                return v
            if not alice and not self._alice_wins(red, blue | (1 << v)):
                return v
        return fallback


def solve_hex(hx: HexInstance) -> Player:
    return HexGameSolver(hx).winner


# -- builders -----------------------------------------------------------------------


def _padded(cnf: CnfInstance) -> CnfInstance:
    if cnf.variable_count % 2 == 0:
        return cnf
    return CnfInstance(cnf.variable_count + 1, cnf.clauses)


def build_bipartite(cnf: CnfInstance) -> ReductionOutput:
    """Variables, duplicated clause vertices, and two universal-to-variables
    hubs; k is half the (even) order.  Output is bipartite with diameter <= 4."""
    cnf = _padded(cnf)
    n, m = cnf.variable_count, len(cnf.clauses)
    total = n + 2 * m + 2
    u1, u2 = n + 2 * m, n + 2 * m + 1
    edges = []
    roles = {i: f"x{i}" for i in range(n)}
    pair = {u1: u2, u2: u1}
    for j, clause in enumerate(cnf.clauses):
        c1, c2 = n + 2 * j, n + 2 * j + 1
        roles[c1] = f"C{j}a"
        roles[c2] = f"C{j}b"
        pair[c1] = c2
        pair[c2] = c1
        for v in clause:
            edges.append((v, c1))
            edges.append((v, c2))
    roles[u1] = "u1"
    roles[u2] = "u2"
    for i in range(n):
        edges.append((i, u1))
        edges.append((i, u2))
    g = Graph.from_edges(total, edges)
    from .graphs import diameter, is_bipartite
    ok, _ = is_bipartite(g)
    if not ok or diameter(g) > 4:
        raise AssertionError("reduction output must be bipartite of diameter <= 4")
    return ReductionOutput("bipartite", g, total // 2, roles,
                           var_count=n, pair_partner=pair, source_cnf=cnf)


def build_split(cnf: CnfInstance) -> ReductionOutput:
    """As the bipartite build, but the variables form a clique and the two
    hubs are dropped; output is a split graph with k = |V|/2."""
    cnf = _padded(cnf)
    n, m = cnf.variable_count, len(cnf.clauses)
    total = n + 2 * m
    edges = [(i, j) for i in range(n) for j in range(i + 1, n)]
    roles = {i: f"x{i}" for i in range(n)}
    pair = {}
    for j, clause in enumerate(cnf.clauses):
        c1, c2 = n + 2 * j, n + 2 * j + 1
        roles[c1] = f"C{j}a"
        roles[c2] = f"C{j}b"
        pair[c1] = c2
        pair[c2] = c1
        for v in clause:
            edges.append((v, c1))
            edges.append((v, c2))
    g = Graph.from_edges(total, edges)
    from .graphs import is_clique, is_independent
    clique_mask = mask_of(range(n))
    if not is_clique(g, clique_mask) or \
       not is_independent(g, g.full_mask & ~clique_mask):
        raise AssertionError("output must be a split graph")
    return ReductionOutput("split", g, total // 2, roles,
                           var_count=n, pair_partner=pair, source_cnf=cnf)


def build_planar(hx: HexInstance) -> ReductionOutput:
    """Attach three pendant hubs to each of s and t, and n+4 leaves to every
    hub; k = n + 5 and |V| = 7n + 30 (n the even-padded hex order)."""
    h = hx.h
    s, t = hx.s, hx.t
    edges = h.edges()
    n = h.n
    if n % 2 == 1:
        # parity pad: one leaf attached to s (does not change the hex outcome)
        edges.append((s, n))
        n += 1
    roles = {v: "hex" for v in range(n)}
    roles[s] = "s"
    roles[t] = "t"
    hub_leaves: dict[int, int] = {}
    s_group = 1 << s
    t_group = 1 << t
    nxt = n
    hubs = []
    for i in range(3):
        hub = nxt
        nxt += 1
        edges.append((s, hub))
        roles[hub] = f"s0_{i + 1}"
        s_group |= 1 << hub
        hubs.append(hub)
    for i in range(3):
        hub = nxt
        nxt += 1
        edges.append((t, hub))
        roles[hub] = f"t0_{i + 1}"
        t_group |= 1 << hub
        hubs.append(hub)
    for hub in hubs:
        leaves = 0
        for _ in range(n + 4):
            leaf = nxt
            nxt += 1
            edges.append((hub, leaf))
            roles[leaf] = f"leaf_of_{hub}"
            leaves |= 1 << leaf
        hub_leaves[hub] = leaves
    g = Graph.from_edges(nxt, edges)
    if g.n != 7 * n + 30:
        raise AssertionError("planar build has wrong order")
    hexi = HexInstance(Graph.from_edges(n, [(u, v) for u, v in edges
                                            if u < n and v < n]), s, t)
    return ReductionOutput("planar", g, n + 5, roles,
                           source_hex=hexi, hex_vertices=(1 << n) - 1,
                           s_group=s_group, t_group=t_group,
                           hub_leaves=hub_leaves, s_vertex=s, t_vertex=t)


# -- lifted strategies ------------------------------------------------------------


def _lowest_uncolored(mask: int, cfg: GameConfig) -> int | None:
    avail = mask & ~cfg.colored
    if not avail:
        return None
    return (avail & -avail).bit_length() - 1


def _fallback_move(g, variant, cfg) -> Move:
    for m in legal_moves(g, variant, cfg):
        if m is not PASS:
            return m
    return PASS


class CnfLift(Strategy):
    """Translate a CNF winning strategy onto the bipartite or split graph.

    Variable vertices forward to the source game (ignoring this side's own
    arbitrary moves); hub and clause-copy moves are answered by pairing.
    State: (true_mask, false_mask) of the virtual source game.
    """

    def __init__(self, red: ReductionOutput, side: Player, source: CnfGameSolver):
        if red.kind not in ("bipartite", "split"):
            raise ValueError(f"CNF lift cannot target a {red.kind} reduction")
        if source.cnf != red.source_cnf:
            raise ValueError("source solver does not match the reduction input")
        self.red = red
        self.side = side
        self.source = source
        self.name = f"lift_{red.kind}_{'alice' if side is Player.ALICE else 'bob'}"
        self.var_mask = mask_of(range(red.var_count))

    def initial_state(self):
        return (0, 0)

    def _respond_variable(self, state, opp_var: int | None):
        true_mask, false_mask = state
        if opp_var is not None:
            if self.side is Player.ALICE:
                false_mask |= 1 << opp_var
            else:
                true_mask |= 1 << opp_var
        free = self.source.full & ~true_mask & ~false_mask
        if not free:
            return None, (true_mask, false_mask)
        x = self.source.best_variable(true_mask, false_mask)
        if self.side is Player.ALICE:
            true_mask |= 1 << x
        else:
            false_mask |= 1 << x
        return x, (true_mask, false_mask)

    def choose(self, g, variant, cfg, state, last_opp):
        if last_opp is None:
            # Alice's opening: her first variable of the winning strategy
            x, state = self._respond_variable(state, None)
            if x is not None and not (cfg.colored >> x & 1):
                return ColorVertex(x), state
            return _fallback_move(g, variant, cfg), state
        v = last_opp.v if last_opp is not PASS else None
        if v is not None and (self.var_mask >> v & 1):
            x, state = self._respond_variable(state, v)
            if x is not None and not (cfg.colored >> x & 1):
                return ColorVertex(x), state
            return _fallback_move(g, variant, cfg), state
        if v is not None:
            partner = self.red.pair_partner.get(v)
            if partner is not None and not (cfg.colored >> partner & 1):
                return ColorVertex(partner), state
        return _fallback_move(g, variant, cfg), state


class PlanarBobLift(Strategy):
    """Bob's hex-blocking strategy on the planar reduction.

    Answers inside the s-star and t-star by exhausting those stars, pairs
    leaves hub-by-hub, and forwards hex moves to the source game.
    """

    def __init__(self, red: ReductionOutput, source: HexGameSolver):
        if red.kind != "planar":
            raise ValueError("planar lift needs a planar reduction")
        if source.hx != red.source_hex:
            raise ValueError("source solver does not match the reduction input")
        self.red = red
        self.source = source
        self.name = "lift_planar_bob"

    def initial_state(self):
        return (0, 0)  # virtual hex red/blue (excluding the pre-red s, t)

    def choose(self, g, variant, cfg, state, last_opp):
        red = self.red
        if last_opp is None or last_opp is PASS:
            return _fallback_move(g, variant, cfg), state
        v = last_opp.v
        if red.s_group >> v & 1:
            w = _lowest_uncolored(red.s_group, cfg)
            if w is not None:
                return ColorVertex(w), state
            return _fallback_move(g, variant, cfg), state
        if red.t_group >> v & 1:
            w = _lowest_uncolored(red.t_group, cfg)
            if w is not None:
                return ColorVertex(w), state
            return _fallback_move(g, variant, cfg), state
        if red.hex_vertices >> v & 1:
            hred, hblue = state
            hred |= 1 << v
            free = self.source.playable & ~hred & ~hblue
            if free:
                w = self.source.best_vertex(hred, hblue)
                hblue |= 1 << w
                state = (hred, hblue)
                if not (cfg.colored >> w & 1):
                    return ColorVertex(w), state
                return _fallback_move(g, variant, cfg), state
            return _fallback_move(g, variant, cfg), (hred, hblue)
        for hub, leaves in red.hub_leaves.items():
            if leaves >> v & 1:
                w = _lowest_uncolored(leaves, cfg)
                if w is not None:
                    return ColorVertex(w), state
                break
        return _fallback_move(g, variant, cfg), state


_A_OPEN_S, _A_HUB_S, _A_THIRD, _A_T, _A_HUB_T, _A_FIFTH = range(6)
_A_LEAF_S, _A_LEAF_T, _A_HEX = 10, 11, 12


class PlanarAliceLift(Strategy):
    """Alice's opening protocol over the two pendant stars, falling back to
    the lifted hex strategy when Bob contests both stars."""

    def __init__(self, red: ReductionOutput, source: HexGameSolver):
        if red.kind != "planar":
            raise ValueError("planar lift needs a planar reduction")
        if source.hx != red.source_hex:
            raise ValueError("source solver does not match the reduction input")
        self.red = red
        self.source = source
        self.name = "lift_planar_alice"
        r = red
        self.s_hubs = r.s_group & ~(1 << r.s_vertex)
        self.t_hubs = r.t_group & ~(1 << r.t_vertex)

    def initial_state(self):
        return (_A_OPEN_S, 0, 0)  # phase, virtual hex red, virtual hex blue

    def _my_hub_leaves(self, hubs: int, cfg: GameConfig) -> int | None:
        mine = hubs & cfg.red
        pool = 0
        for hub in bits(mine):
            pool |= self.red.hub_leaves[hub]
        return _lowest_uncolored(pool, cfg)

    def _hex_respond(self, state, opp_vertex: int | None, cfg):
        phase, hred, hblue = state
        if opp_vertex is not None:
            hblue |= 1 << opp_vertex
        free = self.source.playable & ~hred & ~hblue
        if not free:
            return None, (phase, hred, hblue)
        w = self.source.best_vertex(hred, hblue)
        hred |= 1 << w
        state = (phase, hred, hblue)
        if cfg.colored >> w & 1:
            if not (cfg.red >> w & 1):
                raise AssertionError("virtual hex tracker desynchronised")
            return None, state
        return w, state

    def choose(self, g, variant, cfg, state, last_opp):
        phase, hred, hblue = state
        r = self.red
        if phase == _A_OPEN_S:
            state = (_A_HUB_S, hred, hblue)
            if not (cfg.colored >> r.s_vertex & 1):
                return ColorVertex(r.s_vertex), state
            return _fallback_move(g, variant, cfg), state
        if phase == _A_HUB_S:
            state = (_A_THIRD, hred, hblue)
            w = _lowest_uncolored(self.s_hubs, cfg)
            if w is not None:
                return ColorVertex(w), state
            return _fallback_move(g, variant, cfg), state
        if phase == _A_THIRD:
            w = _lowest_uncolored(self.s_hubs, cfg)
            if w is not None:
                return ColorVertex(w), (_A_LEAF_S, hred, hblue)
            state = (_A_T, hred, hblue)
            if not (cfg.colored >> r.t_vertex & 1):
                return ColorVertex(r.t_vertex), state
            return _fallback_move(g, variant, cfg), state
        if phase == _A_T:
            state = (_A_HUB_T, hred, hblue)
            w = _lowest_uncolored(self.t_hubs, cfg)
            if w is not None:
                return ColorVertex(w), state
            return _fallback_move(g, variant, cfg), state
        if phase == _A_HUB_T:
            w = _lowest_uncolored(self.t_hubs, cfg)
            if w is not None:
                return ColorVertex(w), (_A_LEAF_T, hred, hblue)
            # Bob spent his first four moves on the hubs: play the hex game
            w, state = self._hex_respond((_A_HEX, hred, hblue), None, cfg)
            if w is not None:
                return ColorVertex(w), state
            return _fallback_move(g, variant, cfg), state
        if phase == _A_LEAF_S:
            w = self._my_hub_leaves(self.s_hubs, cfg)
            if w is not None:
                return ColorVertex(w), state
            return _fallback_move(g, variant, cfg), state
        if phase == _A_LEAF_T:
            w = self._my_hub_leaves(self.t_hubs, cfg)
            if w is not None:
                return ColorVertex(w), state
            return _fallback_move(g, variant, cfg), state
        # hex phase
        if last_opp is not None and last_opp is not PASS:
            v = last_opp.v
            if r.hex_vertices >> v & 1 and v not in (r.s_vertex, r.t_vertex):
                w, state = self._hex_respond(state, v, cfg)
                if w is not None:
                    return ColorVertex(w), state
                return _fallback_move(g, variant, cfg), state
            for hub, leaves in r.hub_leaves.items():
                if leaves >> v & 1:
                    w = _lowest_uncolored(leaves, cfg)
                    if w is not None:
                        return ColorVertex(w), state
                    break
        return _fallback_move(g, variant, cfg), state


def lift_strategy(reduction: ReductionOutput, side: Player, source) -> Strategy:
    """The proof's translation of a winning source strategy onto a reduction."""
    if reduction.kind in ("bipartite", "split"):
        if not isinstance(source, CnfGameSolver):
            raise ValueError("CNF reductions lift from a CnfGameSolver")
        return CnfLift(reduction, side, source)
    if reduction.kind == "planar":
        if not isinstance(source, HexGameSolver):
            raise ValueError("planar reductions lift from a HexGameSolver")
        if side is Player.BOB:
            return PlanarBobLift(reduction, source)
        return PlanarAliceLift(reduction, source)
    raise ValueError(f"unknown reduction kind {reduction.kind!r}")


# -- text formats -----------------------------------------------------------------


def parse_cnf(text: str) -> CnfInstance:
    """DIMACS-like all-positive CNF: ``p poscnf <nvars> <nclauses>`` then one
    clause per line of 1-indexed variables terminated by 0."""
    nvars = nclauses = None
    clauses = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith(("#", "c")):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "poscnf":
                raise FormatError(f"line {lineno}: expected 'p poscnf <n> <m>'")
            nvars, nclauses = int(parts[2]), int(parts[3])
            continue
        if nvars is None:
            raise FormatError(f"line {lineno}: clause before problem line")
        try:
            nums = [int(x) for x in line.split()]
        except ValueError as exc:
            raise FormatError(f"line {lineno}: clause must be integers") from exc
        if not nums or nums[-1] != 0:
            raise FormatError(f"line {lineno}: clause must end with 0")
        lits = nums[:-1]
        if any(x <= 0 for x in lits):
            raise FormatError(f"line {lineno}: only positive literals allowed")
        if any(x > nvars for x in lits):
            raise FormatError(f"line {lineno}: variable index out of range")
        clauses.append(tuple(x - 1 for x in lits))
    if nvars is None:
        raise FormatError("missing 'p poscnf' problem line")
    if nclauses is not None and len(clauses) != nclauses:
        raise FormatError(
            f"clause count mismatch: header says {nclauses}, found {len(clauses)}")
    return CnfInstance.of(nvars, clauses)


def format_cnf(cnf: CnfInstance) -> str:
    lines = [f"p poscnf {cnf.variable_count} {len(cnf.clauses)}"]
    for cl in cnf.clauses:
        lines.append(" ".join(str(v + 1) for v in cl) + " 0")
    return "\n".join(lines) + "\n"


def read_cnf(path) -> CnfInstance:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_cnf(fh.read())


def hex_from_document(doc: GraphDocument) -> HexInstance:
    s_lines = doc.meta.get("s", [])
    t_lines = doc.meta.get("t", [])
    if len(s_lines) != 1 or len(t_lines) != 1:
        raise FormatError("hex input needs exactly one 's <v>' and one 't <v>' line")
    return HexInstance(doc.graph, s_lines[0][0], t_lines[0][0])


def read_hex(path) -> HexInstance:
    from .graphs import read_graph
    return hex_from_document(read_graph(path))


def format_hex(hx: HexInstance) -> str:
    from .graphs import format_graph
    body = format_graph(hx.h)
    return body + f"s {hx.s}\nt {hx.t}\n"
