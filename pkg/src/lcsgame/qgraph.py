"""Decomposition-tree evaluation for graphs with few induced P4's.

Trees are inputs, never computed: validation checks every structural axiom
bottom-up, and evaluation spends O(1) work per node (exact solves touch only
constant-size pieces), so the whole computation is linear in the tree size
for fixed q.  The composed Alice strategy mirrors the per-case strategies:
sub-strategies run against a *virtual* board that ignores her arbitrary
moves, the standard device that keeps them sound when wrapped.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Union as TUnion

from .engine import (
    PASS,
    ColorVertex,
    GameConfig,
    Move,
    Plain,
    Player,
    Strategy,
    TargetSet,
    legal_moves,
)
from .graphs import Graph, bits, induced, is_clique, is_connected, is_independent, mask_of
from .solver import (
    DEFAULT_MAX_STATES,
    HeadAnalysis,
    TargetOracle,
    _CompoundSkipGame,
    _Core,
    analyze_head,
    cg,
)


# -- tree nodes ----------------------------------------------------------------


@dataclass(frozen=True)
class Leaf:
    vertices: int  # vertex mask in the host graph


@dataclass(frozen=True)
class UnionNode:
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class JoinNode:
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Spider:
    flavor: str  # "matched" | "antimatched"
    s: int
    k: int
    fmap: tuple[tuple[int, int], ...]  # bijection S -> K
    r_tree: "Node | None" = None


@dataclass(frozen=True)
class PseudoSpider:
    s: int
    k: int
    r_tree: "Node | None" = None


Node = TUnion[Leaf, UnionNode, JoinNode, Spider, PseudoSpider]


@dataclass(frozen=True)
class DecompositionTree:
    q: int
    root: Node


def vertex_set(node: Node) -> int:
    if isinstance(node, Leaf):
        return node.vertices
    if isinstance(node, (UnionNode, JoinNode)):
        return vertex_set(node.left) | vertex_set(node.right)
    if isinstance(node, (Spider, PseudoSpider)):
        r = vertex_set(node.r_tree) if node.r_tree is not None else 0
        return node.s | node.k | r
    raise TypeError(f"unknown node {node!r}")


@dataclass
class ValidationResult:
    ok: bool
    diagnostic: str = ""

    def __bool__(self) -> bool:
        return self.ok


def validate_tree(g: Graph, tree: DecompositionTree) -> ValidationResult:
    """Check every structural invariant of the tree against g, bottom-up.

    Returns false plus a diagnostic path naming the first failing node.
    """

    def fail(path: str, why: str) -> ValidationResult:
        return ValidationResult(False, f"{path}: {why}")

    def cross_edges_all(a: int, b: int) -> bool:
        return all(g.adj[v] & b == b for v in bits(a))

    def cross_edges_none(a: int, b: int) -> bool:
        return all(not (g.adj[v] & b) for v in bits(a))

    def walk(node: Node, path: str) -> ValidationResult:
        if isinstance(node, Leaf):
            if node.vertices == 0:
                return fail(path, "empty leaf")
            if node.vertices & ~g.full_mask:
                return fail(path, "leaf vertices outside graph")
            if node.vertices.bit_count() > tree.q:
                return fail(path, f"leaf larger than q={tree.q}")
            return ValidationResult(True)
        if isinstance(node, (UnionNode, JoinNode)):
            a, b = vertex_set(node.left), vertex_set(node.right)
            if a & b:
                return fail(path, "children overlap")
            if a == 0 or b == 0:
                return fail(path, "empty child")
            if isinstance(node, UnionNode) and not cross_edges_none(a, b):
                return fail(path, "union children are joined by an edge")
            if isinstance(node, JoinNode) and not cross_edges_all(a, b):
                return fail(path, "join is missing a cross edge")
            r = walk(node.left, path + ".left")
            if not r:
                return r
            return walk(node.right, path + ".right")
        if isinstance(node, Spider):
            s, k = node.s, node.k
            r = vertex_set(node.r_tree) if node.r_tree is not None else 0
            if node.flavor not in ("matched", "antimatched"):
                return fail(path, f"unknown flavour {node.flavor!r}")
            if s & k or s & r or k & r:
                return fail(path, "S, K, R are not disjoint")
            if s.bit_count() != k.bit_count() or s.bit_count() < 2:
                return fail(path, "need |S| = |K| >= 2")
            if not is_independent(g, s):
                return fail(path, "S is not independent")
            if not is_clique(g, k):
                return fail(path, "K is not a clique")
            if {a for a, _ in node.fmap} != set(bits(s)) or \
               sorted(b for _, b in node.fmap) != sorted(bits(k)):
                return fail(path, "f is not a bijection S -> K")
            for sv, kv in node.fmap:
                want = (1 << kv) if node.flavor == "matched" else k & ~(1 << kv)
                if g.adj[sv] & k != want:
                    return fail(path, f"vertex {sv} breaks the {node.flavor} pattern")
            if not cross_edges_all(k, r):
                return fail(path, "K is not fully joined to R")
            if not cross_edges_none(s, r):
                return fail(path, "an S-R edge crosses the separator")
            if node.r_tree is not None:
                return walk(node.r_tree, path + ".r")
            return ValidationResult(True)
        if isinstance(node, PseudoSpider):
            s, k = node.s, node.k
            r = vertex_set(node.r_tree) if node.r_tree is not None else 0
            if s & k or s & r or k & r:
                return fail(path, "S, K, R are not disjoint")
            if (s | k).bit_count() > tree.q:
                return fail(path, f"head larger than q={tree.q}")
            if (s | k) == 0:
                return fail(path, "empty head")
            if not cross_edges_all(k, r):
                return fail(path, "K is not fully joined to R")
            if not cross_edges_none(s, r):
                return fail(path, "an S-R edge crosses the separator")
            if node.r_tree is not None:
                return walk(node.r_tree, path + ".r")
            return ValidationResult(True)
        return fail(path, f"unknown node type {type(node).__name__}")

    if tree.q < 0:
        return ValidationResult(False, "root: negative q")
    r = walk(tree.root, "root")
    if not r:
        return r
    if vertex_set(tree.root) != g.full_mask:
        return ValidationResult(False, "root: tree does not cover V(G) exactly")
    return ValidationResult(True)


# -- the matched-spider closed formula ----------------------------------------


def matched_spider_value(n: int, k_size: int) -> int:
    """Game value of a matched spider of order n with |K| = k_size."""
    if not n >= 2 * k_size >= 4:
        raise ValueError("need n >= 2|K| >= 4")
    half_k = k_size // 2
    if n % 2 == 1 and half_k % 2 == 1:
        return (n + 1) // 2 - (half_k + 1) // 2
    return (n + 1) // 2 - half_k // 2


# -- evaluation ------------------------------------------------------------------


@dataclass
class EvalStats:
    nodes_evaluated: int = 0


@dataclass
class _Eval:
    value: int
    node: Node
    mask: int
    # per-node extras used by the composed strategy
    best_child: "_Eval | None" = None
    children: tuple["_Eval", ...] = ()
    head: HeadAnalysis | None = None
    head_graph: Graph | None = None
    head_map: tuple[int, ...] = ()


def _solve_induced(g: Graph, mask: int, max_states: int) -> int:
    sub, _ = induced(g, mask)
    return cg(sub, max_states=max_states).value


def _evaluate(g: Graph, node: Node, q: int, stats: EvalStats,
              max_states: int) -> _Eval:
    stats.nodes_evaluated += 1
    mask = vertex_set(node)
    n = mask.bit_count()
    if isinstance(node, Leaf):
        return _Eval(_solve_induced(g, mask, max_states), node, mask)
    if isinstance(node, UnionNode):
        le = _evaluate(g, node.left, q, stats, max_states)
        re = _evaluate(g, node.right, q, stats, max_states)
        best = le if le.value >= re.value else re
        return _Eval(max(le.value, re.value), node, mask,
                     best_child=best, children=(le, re))
    if isinstance(node, JoinNode):
        le = _evaluate(g, node.left, q, stats, max_states)
        re = _evaluate(g, node.right, q, stats, max_states)
        return _Eval((n + 1) // 2, node, mask, children=(le, re))
    if isinstance(node, Spider):
        children = ()
        if node.r_tree is not None:
            children = (_evaluate(g, node.r_tree, q, stats, max_states),)
        k_size = node.k.bit_count()
        if node.flavor == "antimatched" and k_size >= 3:
            value = (n + 1) // 2
        else:
            # an antimatched bijection on |K| = 2 is a matched spider
            value = matched_spider_value(n, k_size)
        return _Eval(value, node, mask, children=children)
    if isinstance(node, PseudoSpider):
        children = ()
        if node.r_tree is not None:
            children = (_evaluate(g, node.r_tree, q, stats, max_states),)
        head_mask = node.s | node.k
        r_mask = mask & ~head_mask
        r_size = r_mask.bit_count()
        if r_size <= 2 * q:
            return _Eval(_solve_induced(g, mask, max_states), node, mask,
                         children=children)
        sub, back = induced(g, mask)
        if not is_connected(sub):
            raise ValueError(
                "pseudo-spider with |R| > 2q must be connected; "
                "split disconnected graphs under a union root")
        head_graph, head_map = induced(g, head_mask)
        local = {orig: i for i, orig in enumerate(head_map)}
        k_local = mask_of(local[v] for v in bits(node.k))
        head = analyze_head(head_graph, k_local, max_states=max_states)
        if r_size % 2 == 0:
            value = head.c_star + r_size // 2
        elif head.exists_sa2:
            value = head.c_star + (r_size + 1) // 2
        elif head.exists_sb2:
            value = head.c_star + r_size // 2
        elif head_mask.bit_count() % 2 == 0:
            value = head.c_star + (r_size + 1) // 2
        else:
            value = head.c_star + r_size // 2
        return _Eval(value, node, mask, children=children, head=head,
                     head_graph=head_graph, head_map=head_map)
    raise TypeError(f"unknown node {node!r}")


def cg_qgraph(g: Graph, tree: DecompositionTree, *,
              stats: EvalStats | None = None,
              max_states: int = DEFAULT_MAX_STATES) -> int:
    """Game value of a (q, q-4) graph, evaluated bottom-up over its tree."""
    res = validate_tree(g, tree)
    if not res:
        raise ValueError(f"invalid decomposition tree: {res.diagnostic}")
    if stats is None:
        stats = EvalStats()
    return _evaluate(g, tree.root, tree.q, stats, max_states).value


# -- composed Alice strategy -----------------------------------------------------

# Node strategies run against a virtual board (vred, vblue restricted to the
# node's vertices).  The wrapper advances vblue for every opponent move it
# forwards; a want() answer already coloured on the real board must be red
# (one of Alice's own arbitrary moves), gets marked virtually, and the real
# move falls back to an arbitrary vertex.


class _NodeStrategy:
    mask: int

    def initial(self) -> Hashable:
        raise NotImplementedError

    def saw_opponent(self, state: Hashable, v: int) -> Hashable:
        raise NotImplementedError

    def next_move(self, state: Hashable, board: GameConfig,
                  g: Graph) -> tuple[int | None, Hashable]:
        raise NotImplementedError


class _WantStrategy(_NodeStrategy):
    """Common shell: subclasses provide want(vred, vblue) -> vertex | None."""

    def __init__(self, mask: int):
        self.mask = mask

    def initial(self):
        return (0, 0)

    def saw_opponent(self, state, v):
        vred, vblue = state
        return (vred, vblue | (1 << v))

    def want(self, vred: int, vblue: int) -> int | None:
        raise NotImplementedError

    def next_move(self, state, board, g):
        vred, vblue = state
        w = self.want(vred, vblue)
        if w is None:
            return None, state
        bit = 1 << w
        state = (vred | bit, vblue)
        if board.colored & bit:
            if not (board.red & bit):
                raise AssertionError("virtual tracker desynchronised")
            return None, state
        return w, state


def _lowest(mask: int) -> int | None:
    if not mask:
        return None
    return (mask & -mask).bit_length() - 1


class _JoinStrategy(_WantStrategy):
    def __init__(self, mask: int, small: int, large: int):
        super().__init__(mask)
        self.small = small
        self.large = large

    def want(self, vred, vblue):
        avail = self.mask & ~vred & ~vblue
        if self.mask.bit_count() == 2:
            return _lowest(avail)
        if not vred & self.small:
            w = _lowest(self.small & avail)
            if w is not None:
                return w
        if not vred & self.large:
            w = _lowest(self.large & avail)
            if w is not None:
                return w
        return _lowest(avail)


class _AntimatchedStrategy(_WantStrategy):
    def __init__(self, mask: int, k: int):
        super().__init__(mask)
        self.k = k

    def want(self, vred, vblue):
        avail = self.mask & ~vred & ~vblue
        if (vred & self.k).bit_count() < 2:
            w = _lowest(self.k & avail)
            if w is not None:
                return w
        return _lowest(avail)


class _MatchedStrategy(_WantStrategy):
    """Exhaust K, then dodge the S-vertices matched to blue K vertices.

    The matching is read off the adjacency (each S vertex's unique K
    neighbour), which also covers spiders declared antimatched on |K| = 2,
    where the declared bijection is the complement of the real matching.
    """

    def __init__(self, g: Graph, mask: int, s: int, k: int):
        super().__init__(mask)
        self.k = k
        self.fmap = []
        for sv in bits(s):
            nk = g.adj[sv] & k
            if nk.bit_count() != 1:
                raise ValueError("exhaust strategy needs a matched spider")
            self.fmap.append((sv, (nk & -nk).bit_length() - 1))

    def want(self, vred, vblue):
        avail = self.mask & ~vred & ~vblue
        w = _lowest(self.k & avail)
        if w is not None:
            return w
        bad = 0
        for sv, kv in self.fmap:
            if vblue >> kv & 1:
                bad |= 1 << sv
        w = _lowest(avail & ~bad)
        if w is not None:
            return w
        return _lowest(avail)


class _ExactStrategy(_WantStrategy):
    """Optimal play on a leaf or small-pseudo-spider node, from the memo."""

    def __init__(self, g: Graph, mask: int, max_states: int):
        super().__init__(mask)
        sub, self._back = induced(g, mask)
        self._fwd = {orig: i for i, orig in enumerate(self._back)}
        self._core = _Core(sub, Plain(), max_states=max_states)

    def want(self, vred, vblue):
        lred = mask_of(self._fwd[v] for v in bits(vred))
        lblue = mask_of(self._fwd[v] for v in bits(vblue))
        sub = self._core.g
        avail = sub.full_mask & ~lred & ~lblue
        if not avail:
            return None
        target = self._core.exact(lred, lblue)
        for v in bits(avail):
            if self._core.exact(lred | (1 << v), lblue) == target:
                return self._back[v]
        raise AssertionError("no value-preserving vertex in node game")


class _UnionStrategy(_NodeStrategy):
    """Follow the better child inside its component; arbitrary elsewhere."""

    def __init__(self, mask: int, child: _NodeStrategy):
        self.mask = mask
        self.child = child

    def initial(self):
        return (self.child.initial(), True)

    def saw_opponent(self, state, v):
        sub, pending = state
        if self.child.mask >> v & 1:
            return (self.child.saw_opponent(sub, v), True)
        return (sub, pending)

    def next_move(self, state, board, g):
        sub, pending = state
        if not pending:
            return None, state
        w, sub = self.child.next_move(sub, board, g)
        return w, (sub, False)


_PLAIN_MODE, _SA2_MODE, _NEITHER_MODE = 0, 1, 2


class _PseudoSpiderStrategy(_NodeStrategy):
    """The head/rest protocol for a pseudo-spider with |R| > 2q.

    Keeps the local one-skip game state over the head: head moves map
    one-to-one, Alice's pass surfaces as a move into R, and Bob's first move
    into R while a pass would still matter counts as his pass.
    State: (vred, vblue, aP, bP, first) over head vertices.
    """

    def __init__(self, g: Graph, mask: int, head_mask: int,
                 head: HeadAnalysis, head_graph: Graph,
                 head_map: tuple[int, ...], r_size: int):
        self.mask = mask
        self.head_mask = head_mask
        self.r_mask = mask & ~head_mask
        self._back = head_map
        self._fwd = {orig: i for i, orig in enumerate(head_map)}
        self.head = head
        self.head_graph = head_graph
        if r_size % 2 == 0 or head.exists_sb2:
            self.mode = _PLAIN_MODE
        elif head.exists_sa2:
            self.mode = _SA2_MODE
        elif head._hold_game is not None:
            self.mode = _NEITHER_MODE
        else:
            self.mode = _PLAIN_MODE  # still sound for the floor value
        self.oracle: TargetOracle = head._oracle
        self.sa2_game: _CompoundSkipGame | None = head._sa2_game
        self.hold_game: _CompoundSkipGame | None = head._hold_game

    def initial(self):
        return (0, 0, 0, 0, 0)

    def _alice_turn(self, state) -> bool:
        vred, vblue, a_p, b_p, _ = state
        return vred.bit_count() + a_p == vblue.bit_count() + b_p

    def saw_opponent(self, state, v):
        vred, vblue, a_p, b_p, first = state
        if self.head_mask >> v & 1:
            return (vred, vblue | (1 << self._fwd[v]), a_p, b_p, first)
        # a move into R: his pass, the first time a pass still matters
        if self.mode in (_SA2_MODE, _NEITHER_MODE) and b_p == 0 and a_p == 0 \
                and (vred | vblue) != self.head_graph.full_mask:
            return (vred, vblue, a_p, 1, 1)
        return state

    def _play_head_vertex(self, lv: int, state, board):
        vred, vblue, a_p, b_p, first = state
        state = (vred | (1 << lv), vblue, a_p, b_p, first)
        w = self._back[lv]
        if board.colored >> w & 1:
            if not (board.red >> w & 1):
                raise AssertionError("virtual head tracker desynchronised")
            return None, state
        return w, state

    def next_move(self, state, board, g):
        vred, vblue, a_p, b_p, first = state
        head_avail = self.head_graph.full_mask & ~vred & ~vblue
        if not self._alice_turn(state) or not head_avail:
            # keep the head game frozen: mirror into R
            w = _lowest(self.r_mask & ~board.colored)
            return w, state
        if self.mode == _SA2_MODE and a_p == 0 and first == 0:
            move = self.sa2_game.winning_move(vred, vblue, a_p, b_p, first,
                                              prefer_pass=True)
            if move is PASS:
                w = _lowest(self.r_mask & ~board.colored)
                if w is not None:
                    return w, (vred, vblue, 1, b_p, first)
                move = self.sa2_game.winning_move(vred, vblue, a_p, b_p,
                                                  first, prefer_pass=False)
            if move is not PASS:
                return self._play_head_vertex(move.v, state, board)
            return None, state
        if self.mode == _NEITHER_MODE:
            # holding play: the straight value must stay intact while any
            # opponent pass remains punishable, so the whole compound
            # condition picks the move, not just the current value
            move = self.hold_game.winning_move(vred, vblue, a_p, b_p, first,
                                               prefer_pass=False)
            return self._play_head_vertex(move.v, state, board)
        lv = self.oracle.best_vertex(vred, vblue, a_p, b_p)
        return self._play_head_vertex(lv, state, board)


class ComposedAliceStrategy(Strategy):
    """Adapter exposing a node-strategy tree as an engine strategy."""

    def __init__(self, g: Graph, root: _NodeStrategy, name: str):
        self._g = g
        self._root = root
        self.name = name

    def initial_state(self):
        return self._root.initial()

    def choose(self, g, variant, cfg, state, last_opp):
        if last_opp is not None and last_opp is not PASS \
                and self._root.mask >> last_opp.v & 1:
            state = self._root.saw_opponent(state, last_opp.v)
        w, state = self._root.next_move(state, cfg, g)
        if w is None:
            for m in legal_moves(g, variant, cfg):
                if m is not PASS:
                    return m, state
            return PASS, state
        return ColorVertex(w), state


def _build_strategy(g: Graph, ev: _Eval, max_states: int) -> _NodeStrategy:
    node = ev.node
    if isinstance(node, Leaf):
        return _ExactStrategy(g, ev.mask, max_states)
    if isinstance(node, UnionNode):
        sub = _build_strategy(g, ev.best_child, max_states)
        return _UnionStrategy(ev.mask, sub)
    if isinstance(node, JoinNode):
        a = vertex_set(node.left)
        b = vertex_set(node.right)
        if a.bit_count() > b.bit_count():
            a, b = b, a
        return _JoinStrategy(ev.mask, a, b)
    if isinstance(node, Spider):
        k_size = node.k.bit_count()
        if node.flavor == "antimatched" and k_size >= 3:
            return _AntimatchedStrategy(ev.mask, node.k)
        return _MatchedStrategy(g, ev.mask, node.s, node.k)
    if isinstance(node, PseudoSpider):
        if ev.head is None:  # small rest: exact play on the whole node
            return _ExactStrategy(g, ev.mask, max_states)
        head_mask = node.s | node.k
        r_size = (ev.mask & ~head_mask).bit_count()
        return _PseudoSpiderStrategy(g, ev.mask, head_mask, ev.head,
                                     ev.head_graph, ev.head_map, r_size)
    raise TypeError(f"unknown node {node!r}")


def alice_strategy_qgraph(g: Graph, tree: DecompositionTree, *,
                          max_states: int = DEFAULT_MAX_STATES) -> Strategy:
    """Alice strategy achieving cg_qgraph(g, tree) against any Bob."""
    res = validate_tree(g, tree)
    if not res:
        raise ValueError(f"invalid decomposition tree: {res.diagnostic}")
    stats = EvalStats()
    ev = _evaluate(g, tree.root, tree.q, stats, max_states)
    root = _build_strategy(g, ev, max_states)
    return ComposedAliceStrategy(g, root, "qgraph-alice")


# -- text format --------------------------------------------------------------------


def _fmt_node(node: Node) -> str:
    if isinstance(node, Leaf):
        return "(leaf " + " ".join(str(v) for v in bits(node.vertices)) + ")"
    if isinstance(node, UnionNode):
        return f"(union {_fmt_node(node.left)} {_fmt_node(node.right)})"
    if isinstance(node, JoinNode):
        return f"(join {_fmt_node(node.left)} {_fmt_node(node.right)})"
    if isinstance(node, Spider):
        s = " ".join(str(v) for v in bits(node.s))
        k = " ".join(str(v) for v in bits(node.k))
        f = " ".join(f"{a}:{b}" for a, b in sorted(node.fmap))
        r = f" {_fmt_node(node.r_tree)}" if node.r_tree is not None else ""
        return f"(spider {node.flavor} (s {s}) (k {k}) (f {f}){r}"+")"
    if isinstance(node, PseudoSpider):
        s = " ".join(str(v) for v in bits(node.s))
        k = " ".join(str(v) for v in bits(node.k))
        r = f" {_fmt_node(node.r_tree)}" if node.r_tree is not None else ""
        return f"(pspider (s {s}) (k {k}){r})"
    raise TypeError(f"unknown node {node!r}")


def format_tree(tree: DecompositionTree) -> str:
    return f"q {tree.q}\n{_fmt_node(tree.root)}\n"


def _tokenize(text: str) -> list[str]:
    return text.replace("(", " ( ").replace(")", " ) ").split()


def parse_tree(text: str) -> DecompositionTree:
    """Parse the parenthesised tree format with its ``q <int>`` header."""
    lines = [ln for ln in text.splitlines()
             if ln.strip() and not ln.strip().startswith("#")]
    if not lines or not lines[0].split()[0] == "q":
        raise ValueError("tree file must start with a 'q <int>' header")
    header = lines[0].split()
    if len(header) != 2:
        raise ValueError("malformed q header")
    q = int(header[1])
    toks = _tokenize("\n".join(lines[1:]))
    pos = 0

    def expect(tok: str):
        nonlocal pos
        if pos >= len(toks) or toks[pos] != tok:
            raise ValueError(f"expected {tok!r} at token {pos}")
        pos += 1

    def peek() -> str:
        if pos >= len(toks):
            raise ValueError("unexpected end of tree")
        return toks[pos]

    def parse_ints_until_close() -> list[int]:
        nonlocal pos
        out = []
        while peek() != ")":
            out.append(int(toks[pos]))
            pos += 1
        pos += 1
        return out

    def parse_group(tag: str) -> list[int]:
        expect("(")
        expect(tag)
        return parse_ints_until_close()

    def parse_node() -> Node:
        nonlocal pos
        expect("(")
        kind = toks[pos]
        pos += 1
        if kind == "leaf":
            return Leaf(mask_of(parse_ints_until_close()))
        if kind in ("union", "join"):
            left = parse_node()
            right = parse_node()
            expect(")")
            return (UnionNode if kind == "union" else JoinNode)(left, right)
        if kind == "spider":
            flavor = toks[pos]
            pos += 1
            s = parse_group("s")
            k = parse_group("k")
            expect("(")
            expect("f")
            fmap = []
            while peek() != ")":
                a, b = toks[pos].split(":")
                fmap.append((int(a), int(b)))
                pos += 1
            pos += 1
            r_tree = None
            if peek() == "(":
                r_tree = parse_node()
            expect(")")
            return Spider(flavor, mask_of(s), mask_of(k), tuple(fmap), r_tree)
        if kind == "pspider":
            s = parse_group("s")
            k = parse_group("k")
            r_tree = None
            if peek() == "(":
                r_tree = parse_node()
            expect(")")
            return PseudoSpider(mask_of(s), mask_of(k), r_tree)
        raise ValueError(f"unknown node kind {kind!r}")

    root = parse_node()
    if pos != len(toks):
        raise ValueError("trailing tokens after tree")
    return DecompositionTree(q, root)


def read_tree(path) -> DecompositionTree:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_tree(fh.read())


def write_tree(path, tree: DecompositionTree) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_tree(tree))


def spider_tree(fg, q: int | None = None) -> DecompositionTree:
    """Canonical tree for a generated spider family instance."""
    k = fg.params["k"]
    r = fg.params["r"]
    flavor = fg.family.rsplit("_", 1)[1]
    s_mask = mask_of(range(k))
    k_mask = mask_of(range(k, 2 * k))
    fmap = tuple((i, k + i) for i in range(k))
    r_tree = None
    if r:
        r_tree = Leaf(mask_of(range(2 * k, 2 * k + r)))
    if q is None:
        q = max(4, r)
    return DecompositionTree(q, Spider(flavor, s_mask, k_mask, fmap, r_tree))
