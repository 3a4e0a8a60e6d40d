"""Exact game values by memoised minimax over bitboard positions.

Positions are pairs of packed vertex sets (plus skip counters where the
variant allows passing); the mover is derived from turn counts, never
stored, which keeps transposition keys small.  Alpha-beta pruning and
admissible static bounds are used on the default path; an unpruned plain
minimax is kept alongside so the no-effect-on-values invariant can be
checked directly.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from .engine import (
    PASS,
    BudgetExceededError,
    ColorVertex,
    Connected,
    GameConfig,
    GameVariant,
    Move,
    Plain,
    Player,
    SkipBudget,
    Strategy,
    TargetSet,
    apply_move,
    legal_moves,
    score,
)
from .graphs import (
    SOLVER_CAPACITY,
    CapacityError,
    Graph,
    bits,
    component_of,
    components,
    components_within,
    induced,
    largest_component_order,
)

DEFAULT_MAX_STATES = 500_000_000

_EXACT, _LOWER, _UPPER = 0, 1, 2

_PLAIN_K, _TARGET_K, _CONNECTED_K, _SKIP_K = 0, 1, 2, 3


def _variant_kind(variant: GameVariant) -> tuple[int, int]:
    if isinstance(variant, Plain):
        return _PLAIN_K, 0
    if isinstance(variant, TargetSet):
        return _TARGET_K, variant.x
    if isinstance(variant, Connected):
        return _CONNECTED_K, 0
    if isinstance(variant, SkipBudget):
        return _SKIP_K, variant.x
    raise TypeError(f"unknown variant {variant!r}")


class _Core:
    """Search core over one graph/variant; owns the transposition table."""

    def __init__(self, g: Graph, variant: GameVariant, *,
                 use_pruning: bool = True, max_states: int = DEFAULT_MAX_STATES,
                 time_limit: float | None = None):
        if g.n > SOLVER_CAPACITY:
            raise CapacityError(
                f"solver requires n <= {SOLVER_CAPACITY}, got {g.n}")
        self.g = g
        self.variant = variant
        self.kind, self.x = _variant_kind(variant)
        self.a_budget = variant.alice_budget if self.kind == _SKIP_K else 0
        self.b_budget = variant.bob_budget if self.kind == _SKIP_K else 0
        self.use_pruning = use_pruning
        self.max_states = max_states
        self.deadline = None if time_limit is None else time.monotonic() + time_limit
        self.expanded = 0
        self.tt: dict[int, tuple[int, int]] = {}
        # live components depend only on blue (live = V \ blue)
        self._live_comps: dict[int, list[int]] = {}

    # -- scoring ------------------------------------------------------------

    def _score(self, red: int) -> int:
        adj = self.g.adj
        if self.kind in (_PLAIN_K, _CONNECTED_K):
            return largest_component_order(adj, red) if red else 0
        x = self.x
        if red == 0 or x == 0:
            return 0
        total = 0
        rest = red
        while rest:
            comp = component_of(adj, rest & -rest, red)
            rest &= ~comp
            if comp & x:
                total += comp.bit_count()
        return total

    # -- terminal and move machinery -----------------------------------------

    def _alice_moves_left(self, u: int, alice_to_move: bool) -> int:
        return (u + 1) // 2 if alice_to_move else u // 2

    def _component_upper(self, red: int, blue: int, fa: int) -> int:
        """Admissible bound: the final largest red component lives inside one
        component of G - blue."""
        live = self.g.full_mask & ~blue
        comps = self._live_comps.get(blue)
        if comps is None:
            comps = components_within(self.g.adj, live)
            self._live_comps[blue] = comps
        best = 0
        for comp in comps:
            cap = comp.bit_count()
            b = (comp & red).bit_count() + fa
            if cap < b:
                b = cap
            if b > best:
                best = b
        return best

    def _tick(self) -> None:
        self.expanded += 1
        if self.expanded > self.max_states:
            raise BudgetExceededError(
                f"solver exceeded state budget of {self.max_states}")
        if self.deadline is not None and not self.expanded % 2048 \
                and time.monotonic() > self.deadline:
            raise BudgetExceededError("solver exceeded its time limit")

    # -- pruned search --------------------------------------------------------

    def search(self, red: int, blue: int, ask: int, bsk: int,
               alpha: int, beta: int) -> int:
        g = self.g
        uncolored = g.full_mask & ~(red | blue)
        rc, bc = red.bit_count(), blue.bit_count()
        alice = (rc + ask) == (bc + bsk)
        kind = self.kind

        # terminal?
        if kind == _SKIP_K:
            can_pass = (ask < self.a_budget) if alice else (bsk < self.b_budget)
            if uncolored == 0 and not can_pass:
                return self._score(red)
        elif kind == _CONNECTED_K:
            if uncolored == 0:
                return self._score(red)
            if alice and red and not (g.neighborhood(red) & uncolored):
                return self._score(red)
        else:
            if uncolored == 0:
                return self._score(red)

        u = uncolored.bit_count()
        if kind == _SKIP_K:
            ub = rc + u
        else:
            fa = self._alice_moves_left(u, alice)
            if kind == _TARGET_K:
                ub = (rc + fa) if self.x else 0
            else:
                ub = self._component_upper(red, blue, fa)
        if ub <= alpha:
            return ub
        lb = 0
        if rc >= beta or kind == _CONNECTED_K:
            lb = self._score(red)
            if lb >= beta:
                return lb
        if lb == ub:
            return lb

        if kind == _SKIP_K:
            key = ((ask * 2 + bsk) << (2 * SOLVER_CAPACITY)) | (red << SOLVER_CAPACITY) | blue
        else:
            key = (red << SOLVER_CAPACITY) | blue
        hit = self.tt.get(key)
        if hit is not None:
            v, flag = hit
            if flag == _EXACT:
                return v
            if flag == _LOWER:
                if v >= beta:
                    return v
                if v > alpha:
                    alpha = v
            else:
                if v <= alpha:
                    return v
                if v < beta:
                    beta = v
        self._tick()

        # move generation, neighbours of red first
        if kind == _CONNECTED_K and alice and red:
            cand = g.neighborhood(red) & uncolored
            near, far = cand, 0
        else:
            near = g.neighborhood(red) & uncolored if red else 0
            far = uncolored & ~near
        a0, b0 = alpha, beta
        if alice:
            best = -1
            for part in (near, far):
                for v in bits(part):
                    bit = 1 << v
                    val = self.search(red | bit, blue, ask, bsk, alpha, beta)
                    if val > best:
                        best = val
                    if best > alpha:
                        alpha = best
                    if alpha >= beta:
                        break
                if alpha >= beta:
                    break
            if kind == _SKIP_K and ask < self.a_budget and alpha < beta:
                val = self.search(red, blue, ask + 1, bsk, alpha, beta)
                if val > best:
                    best = val
            flag = _EXACT
            if best <= a0:
                flag = _UPPER
            elif best >= b0:
                flag = _LOWER
        else:
            best = self.g.n + 1
            for part in (near, far):
                for v in bits(part):
                    bit = 1 << v
                    val = self.search(red, blue | bit, ask, bsk, alpha, beta)
                    if val < best:
                        best = val
                    if best < beta:
                        beta = best
                    if alpha >= beta:
                        break
                if alpha >= beta:
                    break
            if kind == _SKIP_K and bsk < self.b_budget and alpha < beta:
                val = self.search(red, blue, ask, bsk + 1, alpha, beta)
                if val < best:
                    best = val
            flag = _EXACT
            if best <= a0:
                flag = _UPPER
            elif best >= b0:
                flag = _LOWER
        self.tt[key] = (best, flag)
        return best

    # -- unpruned reference search ---------------------------------------------

    def search_plain(self, red: int, blue: int, ask: int, bsk: int) -> int:
        g = self.g
        uncolored = g.full_mask & ~(red | blue)
        rc, bc = red.bit_count(), blue.bit_count()
        alice = (rc + ask) == (bc + bsk)
        kind = self.kind
        if kind == _SKIP_K:
            can_pass = (ask < self.a_budget) if alice else (bsk < self.b_budget)
            if uncolored == 0 and not can_pass:
                return self._score(red)
        elif kind == _CONNECTED_K:
            if uncolored == 0:
                return self._score(red)
            if alice and red and not (g.neighborhood(red) & uncolored):
                return self._score(red)
        else:
            if uncolored == 0:
                return self._score(red)
        if kind == _SKIP_K:
            key = ((ask * 2 + bsk) << (2 * SOLVER_CAPACITY)) | (red << SOLVER_CAPACITY) | blue
        else:
            key = (red << SOLVER_CAPACITY) | blue
        hit = self.tt.get(key)
        if hit is not None:
            return hit[0]
        self._tick()
        if kind == _CONNECTED_K and alice and red:
            cand = g.neighborhood(red) & uncolored
        else:
            cand = uncolored
        vals = []
        for v in bits(cand):
            bit = 1 << v
            if alice:
                vals.append(self.search_plain(red | bit, blue, ask, bsk))
            else:
                vals.append(self.search_plain(red, blue | bit, ask, bsk))
        if kind == _SKIP_K:
            if alice and ask < self.a_budget:
                vals.append(self.search_plain(red, blue, ask + 1, bsk))
            elif not alice and bsk < self.b_budget:
                vals.append(self.search_plain(red, blue, ask, bsk + 1))
        best = max(vals) if alice else min(vals)
        self.tt[key] = (best, _EXACT)
        return best

    # -- public helpers ----------------------------------------------------------

    def exact(self, red: int, blue: int, ask: int = 0, bsk: int = 0) -> int:
        if self.use_pruning:
            return self.search(red, blue, ask, bsk, -1, self.g.n + 1)
        return self.search_plain(red, blue, ask, bsk)

    def exact_cfg(self, cfg: GameConfig) -> int:
        return self.exact(cfg.red, cfg.blue, cfg.alice_skips_used, cfg.bob_skips_used)


def _child_cfg(cfg: GameConfig, mover: Player, move: Move) -> GameConfig:
    return apply_move(cfg, mover, move)


class OptimalStrategy(Strategy):
    """Value-preserving move chooser backed by a solver core's memo table.

    On each turn it recomputes the exact value of the current position
    (cached by the shared transposition table) and plays the lowest-index
    move, Pass last, whose successor keeps that value.
    """

    def __init__(self, core: _Core, side: Player, name: str = "optimal"):
        self._core = core
        self.side = side
        self.name = name

    def choose(self, g, variant, cfg, state, last_opp):
        core = self._core
        target = core.exact_cfg(cfg)
        best_move = None
        for move in legal_moves(g, variant, cfg):
            child = _child_cfg(cfg, self.side, move)
            val = core.exact_cfg(child)
            if val == target:
                best_move = move
                break
        if best_move is None:
            raise RuntimeError("no value-preserving move found (solver bug)")
        return best_move, None


class SolveResult:
    """Exact game value with the search statistics and extractable strategies.

    ``principal_variation`` is computed lazily from the memo table; for a
    disconnected Plain game it covers the decisive component (the one whose
    value is the game value) and replaying it yields a position whose score
    equals ``value``.
    """

    def __init__(self, value: int, states_expanded: int, core: _Core,
                 component_map: tuple[int, ...] | None = None):
        self.value = value
        self.states_expanded = states_expanded
        self._core = core
        self._component_map = component_map
        self._pv: list[Move] | None = None

    @property
    def principal_variation(self) -> list[Move]:
        if self._pv is None:
            self._pv = self._compute_pv()
        return self._pv

    def _compute_pv(self) -> list[Move]:
        core = self._core
        g, variant = core.g, core.variant
        cfg = GameConfig()
        line: list[Move] = []
        while True:
            legal = legal_moves(g, variant, cfg)
            if not legal:
                break
            mover = cfg.mover()
            target = core.exact_cfg(cfg)
            chosen = None
            for move in legal:
                child = _child_cfg(cfg, mover, move)
                if core.exact_cfg(child) == target:
                    chosen = move
                    break
            assert chosen is not None
            cfg = _child_cfg(cfg, mover, chosen)
            if self._component_map is not None and chosen is not PASS:
                line.append(ColorVertex(self._component_map[chosen.v]))
            else:
                line.append(chosen)
        return line

    def alice_strategy(self, name: str = "optimal-alice") -> Strategy:
        if self._component_map is not None:
            raise ValueError("strategy extraction needs a whole-graph solve; "
                             "re-solve the component of interest directly")
        return OptimalStrategy(self._core, Player.ALICE, name)

    def bob_strategy(self, name: str = "optimal-bob") -> Strategy:
        if self._component_map is not None:
            raise ValueError("strategy extraction needs a whole-graph solve; "
                             "re-solve the component of interest directly")
        return OptimalStrategy(self._core, Player.BOB, name)


def _solve_whole(g: Graph, variant: GameVariant, initial: GameConfig, *,
                 use_pruning: bool, max_states: int, threads: int,
                 time_limit: float | None = None) -> SolveResult:
    core = _Core(g, variant, use_pruning=use_pruning, max_states=max_states,
                 time_limit=time_limit)
    start = (initial.red, initial.blue,
             initial.alice_skips_used, initial.bob_skips_used)
    if threads > 1 and initial == GameConfig():
        legal = legal_moves(g, variant, initial)
        mover = initial.mover()
        if len(legal) > 1:
            cores = []

            def solve_child(move: Move) -> int:
                child_core = _Core(g, variant, use_pruning=use_pruning,
                                   max_states=max_states, time_limit=time_limit)
                cores.append(child_core)
                child = _child_cfg(initial, mover, move)
                return child_core.exact_cfg(child)

            with ThreadPoolExecutor(max_workers=threads) as pool:
                vals = list(pool.map(solve_child, legal))
            value = max(vals) if mover is Player.ALICE else min(vals)
            expanded = sum(c.expanded for c in cores)
            # the untouched core serves lazy PV / strategy extraction
            return SolveResult(value, expanded, core)
    value = core.exact(*start)
    return SolveResult(value, core.expanded, core)


def cg(g: Graph, variant: GameVariant = Plain(), *,
       initial: GameConfig = GameConfig(),
       use_pruning: bool = True,
       max_states: int = DEFAULT_MAX_STATES,
       threads: int = 1,
       time_limit: float | None = None,
       split_components: bool = True) -> SolveResult:
    """Exact game value under optimal play (Alice maximises, Bob minimises).

    For the Plain variant on a disconnected graph each connected component
    is solved independently and the maximum taken; all other variants solve
    the whole graph.
    """
    if g.n > SOLVER_CAPACITY:
        raise CapacityError(f"solver requires n <= {SOLVER_CAPACITY}, got {g.n}")
    initial.check(g)
    if isinstance(variant, Plain) and split_components and initial == GameConfig():
        comps = components(g)
        if len(comps) > 1:
            best = None
            total = 0
            for comp in comps:
                sub, back = induced(g, comp)
                res = _solve_whole(sub, variant, GameConfig(),
                                   use_pruning=use_pruning,
                                   max_states=max_states, threads=threads,
                                   time_limit=time_limit)
                total += res.states_expanded
                if best is None or res.value > best[0].value:
                    best = (res, back)
            res, back = best
            out = SolveResult(res.value, total, res._core, component_map=back)
            return out
    return _solve_whole(g, variant, initial, use_pruning=use_pruning,
                        max_states=max_states, threads=threads,
                        time_limit=time_limit)


def is_a_perfect(g: Graph, *, max_states: int = DEFAULT_MAX_STATES) -> bool:
    """True iff Alice can keep her whole colouring connected: value = ceil(n/2)."""
    return cg(g, max_states=max_states).value == (g.n + 1) // 2


# -- forcing a connected dominating set within r rounds -----------------------


def _red_contains_cds(g: Graph, red: int) -> bool:
    # red contains a connected dominating set iff one of its components
    # already dominates the whole graph
    if red == 0:
        return g.n == 0
    for comp in components_within(g.adj, red):
        if g.closed_neighborhood(comp) == g.full_mask:
            return True
    return False


def can_force_cds_within(g: Graph, r: int, *,
                         max_states: int = DEFAULT_MAX_STATES) -> bool:
    """Can Alice colour a connected dominating set by her r-th move, whatever
    Bob does?  Solved as a win/lose game truncated after Alice's r-th move."""
    if g.n > SOLVER_CAPACITY:
        raise CapacityError(f"solver requires n <= {SOLVER_CAPACITY}")
    if r < 1:
        raise ValueError("r must be >= 1")
    if g.n == 0:
        return True
    full = g.full_mask
    memo: dict[int, bool] = {}
    expanded = 0

    def alice_wins(red: int, blue: int) -> bool:
        nonlocal expanded
        # Alice to move; she has made red.bit_count() moves so far
        uncolored = full & ~(red | blue)
        if uncolored == 0:
            return False
        key = (red << SOLVER_CAPACITY) | blue
        hit = memo.get(key)
        if hit is not None:
            return hit
        expanded += 1
        if expanded > max_states:
            raise BudgetExceededError("cds search exceeded state budget")
        moves_made = red.bit_count()
        result = False
        for v in bits(uncolored):
            nred = red | (1 << v)
            if _red_contains_cds(g, nred):
                result = True
                break
            if moves_made + 1 >= r:
                continue
            rest = full & ~(nred | blue)
            if rest == 0:
                continue
            if all(alice_wins(nred, blue | (1 << w)) for w in bits(rest)):
                result = True
                break
        memo[key] = result
        return result

    return alice_wins(0, 0)


# -- the one-skip-each head analysis ------------------------------------------


@dataclass
class HeadAnalysis:
    """Outcome of analysing a pseudo-spider head G1 with target set K.

    ``c_star`` is the plain target-set value; the two flags report whether
    Alice (resp. Bob) owns a compound skip strategy: a way to spend their one
    pass without losing value, while punishing an earlier opponent pass by a
    full extra point.  When neither exists, ``_hold_game`` carries Alice's
    holding strategy (never pass, keep the straight value, and still punish
    an opponent pass by a point), which realises the parity rule.
    """

    c_star: int
    exists_sa2: bool
    exists_sb2: bool

    # solver handles kept for strategy extraction
    _sa2_game: "_CompoundSkipGame | None" = None
    _hold_game: "_CompoundSkipGame | None" = None
    _oracle: "TargetOracle | None" = None


class TargetOracle:
    """Exact values and optimal moves of the target-set game from arbitrary
    positions, including positions reached after skipped turns (the skip
    counts act as parity offsets)."""

    def __init__(self, g: Graph, x: int, max_states: int = DEFAULT_MAX_STATES):
        self.g = g
        self.x = x
        self._cores: dict[tuple[int, int], _Core] = {}
        self.max_states = max_states

    def _core(self, a_off: int, b_off: int) -> _Core:
        core = self._cores.get((a_off, b_off))
        if core is None:
            variant = SkipBudget(min(a_off, 1), min(b_off, 1), self.x)
            core = _Core(self.g, variant, max_states=self.max_states)
            self._cores[(a_off, b_off)] = core
        return core

    def value(self, red: int, blue: int, a_off: int = 0, b_off: int = 0) -> int:
        # offsets equal to the budgets: no pass remains available, so the
        # game is pure alternation with the requested parity
        return self._core(a_off, b_off).exact(red, blue, a_off, b_off)

    def best_vertex(self, red: int, blue: int, a_off: int = 0, b_off: int = 0) -> int:
        core = self._core(a_off, b_off)
        alice = (red.bit_count() + a_off) == (blue.bit_count() + b_off)
        target = core.exact(red, blue, a_off, b_off)
        for v in bits(self.g.full_mask & ~(red | blue)):
            bit = 1 << v
            if alice:
                val = core.exact(red | bit, blue, a_off, b_off)
            else:
                val = core.exact(red, blue | bit, a_off, b_off)
            if val == target:
                return v
        raise RuntimeError("no value-preserving vertex (solver bug)")


class _CompoundSkipGame:
    """Win/lose analysis of the one-skip-each target game with pass-order
    win conditions (the existence questions for the Sa2/Sb2-style strategies).

    State: (red, blue, aP, bP, first) where ``first`` records that the
    antagonist passed while the protagonist had not yet passed.

    A pass stands for a move into the rest of a larger graph, so it is legal
    only while uncoloured vertices remain: nobody is ever forced to pass,
    and the game ends the moment the board is full.  (Allowing passes on a
    full board would force the protagonist to burn an unspent pass at the
    end, wrongly poisoning otherwise winning lines.)
    """

    def __init__(self, g: Graph, x: int, c_star: int, protagonist: Player,
                 strict: bool = True, protagonist_passes: bool = True):
        self.g = g
        self.x = x
        self.c_star = c_star
        self.protagonist = protagonist
        self.strict = strict
        # holding variant: the protagonist never passes, only defends the
        # straight value while punishing the opponent's pass by a point
        self.protagonist_passes = protagonist_passes
        self.memo: dict[tuple[int, int, int, int, int], bool] = {}

    def _terminal_win(self, red: int, blue: int, a_p: int, b_p: int,
                      first: int) -> bool:
        sc = score(self.g, TargetSet(self.x), red)
        own_passes = 1 if self.protagonist_passes else 0
        if self.protagonist is Player.ALICE:
            if first:  # Bob passed before any Alice pass
                ok = sc >= self.c_star + 1
                if self.strict:
                    ok = ok and a_p == 0
                return ok
            return a_p == own_passes and sc >= self.c_star
        if first:  # Alice passed before any Bob pass
            ok = sc <= self.c_star - 1
            if self.strict:
                ok = ok and b_p == 0
            return ok
        return b_p == own_passes and sc <= self.c_star

    def moves(self, red: int, blue: int, a_p: int, b_p: int) -> list[Move]:
        uncolored = self.g.full_mask & ~(red | blue)
        if not uncolored:
            return []
        alice = (red.bit_count() + a_p) == (blue.bit_count() + b_p)
        out: list[Move] = [ColorVertex(v) for v in bits(uncolored)]
        if alice:
            may_pass = a_p == 0 and (self.protagonist_passes
                                     or self.protagonist is Player.BOB)
        else:
            may_pass = b_p == 0 and (self.protagonist_passes
                                     or self.protagonist is Player.ALICE)
        if may_pass:
            out.append(PASS)
        return out

    def wins(self, red: int = 0, blue: int = 0, a_p: int = 0, b_p: int = 0,
             first: int = 0) -> bool:
        key = (red, blue, a_p, b_p, first)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        mv = self.moves(red, blue, a_p, b_p)
        if not mv:
            result = self._terminal_win(red, blue, a_p, b_p, first)
            self.memo[key] = result
            return result
        alice = (red.bit_count() + a_p) == (blue.bit_count() + b_p)
        protagonist_turn = (alice == (self.protagonist is Player.ALICE))
        result = not protagonist_turn
        for move in mv:
            if move is PASS:
                if alice:
                    nfirst = first or (self.protagonist is Player.BOB and b_p == 0)
                    child = self.wins(red, blue, 1, b_p, int(nfirst))
                else:
                    nfirst = first or (self.protagonist is Player.ALICE and a_p == 0)
                    child = self.wins(red, blue, a_p, 1, int(nfirst))
            else:
                bit = 1 << move.v
                if alice:
                    child = self.wins(red | bit, blue, a_p, b_p, first)
                else:
                    child = self.wins(red, blue | bit, a_p, b_p, first)
            if protagonist_turn and child:
                result = True
                break
            if not protagonist_turn and not child:
                result = False
                break
        self.memo[key] = result
        return result

    def winning_move(self, red: int, blue: int, a_p: int, b_p: int,
                     first: int, prefer_pass: bool) -> Move:
        """Protagonist's winning move; Pass is preferred when requested and
        winning, otherwise the lowest-index winning vertex is played."""
        mv = self.moves(red, blue, a_p, b_p)
        alice = (red.bit_count() + a_p) == (blue.bit_count() + b_p)
        ordered = mv
        if prefer_pass and PASS in mv:
            ordered = [PASS] + [m for m in mv if m is not PASS]
        for move in ordered:
            if move is PASS:
                if alice:
                    nfirst = first or (self.protagonist is Player.BOB and b_p == 0)
                    ok = self.wins(red, blue, 1, b_p, int(nfirst))
                else:
                    nfirst = first or (self.protagonist is Player.ALICE and a_p == 0)
                    ok = self.wins(red, blue, a_p, 1, int(nfirst))
            else:
                bit = 1 << move.v
                if alice:
                    ok = self.wins(red | bit, blue, a_p, b_p, first)
                else:
                    ok = self.wins(red, blue | bit, a_p, b_p, first)
            if ok:
                return move
        raise RuntimeError("position is not winning for the protagonist")


def analyze_head(g1: Graph, k: int, *, strict_pass_rule: bool = True,
                 max_states: int = DEFAULT_MAX_STATES) -> HeadAnalysis:
    """Analyse a constant-size head: the target-set value plus the existence
    of the two compound one-skip strategies used by the pseudo-spider rule.

    ``strict_pass_rule`` pins the reading where the player who benefits from
    the opponent's earlier pass must not pass afterwards; the relaxed
    reading only demands the improved score.
    """
    if k & ~g1.full_mask:
        raise ValueError("target set outside head graph")
    c_star = cg(g1, TargetSet(k), max_states=max_states).value
    sa2_game = _CompoundSkipGame(g1, k, c_star, Player.ALICE, strict_pass_rule)
    sb2_game = _CompoundSkipGame(g1, k, c_star, Player.BOB, strict_pass_rule)
    exists_sa2 = sa2_game.wins()
    exists_sb2 = sb2_game.wins()
    if exists_sa2 and exists_sb2:
        raise AssertionError(
            "compound skip strategies for both players cannot coexist")
    hold_game = None
    if not exists_sa2 and not exists_sb2:
        hold_game = _CompoundSkipGame(g1, k, c_star, Player.ALICE,
                                      strict_pass_rule,
                                      protagonist_passes=False)
        if not hold_game.wins():
            hold_game = None
    oracle = TargetOracle(g1, k, max_states=max_states)
    return HeadAnalysis(c_star, exists_sa2, exists_sb2,
                        _sa2_game=sa2_game if exists_sa2 else None,
                        _hold_game=hold_game,
                        _oracle=oracle)
