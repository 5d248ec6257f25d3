"""Finite-state acceptor engine.

Acceptors are nondeterministic, may carry spontaneous (label ``None``)
transitions, and are immutable once built: every operation allocates a
fresh result, so concurrent use is safe. Parallel duplicate transitions
are preserved, because run counting (:func:`is_unambiguous`) treats each
transition as a distinct run step.

Constructions that can blow up (subset construction, products) abort
with :class:`StateCapExceededError` once they would allocate more states
than the configured cap.
"""

from __future__ import annotations

from collections import defaultdict, deque
from typing import Iterable, Optional

from .errors import (
    AlphabetMismatchError,
    InputError,
    PreconditionError,
    RegexSyntaxError,
    StateCapExceededError,
)
from .words import Alphabet, Word

DEFAULT_STATE_CAP = 100_000

_state_cap = DEFAULT_STATE_CAP


def state_cap() -> int:
    """Current limit on states allocated by a single construction."""
    return _state_cap


def set_state_cap(cap: int) -> None:
    global _state_cap
    if cap < 1:
        raise InputError("state cap must be positive")
    _state_cap = cap


def _check_cap(n: int) -> None:
    if n > _state_cap:
        raise StateCapExceededError(f"construction needs more than {_state_cap} states")


class Fsa:
    """Finite-state acceptor over a fixed alphabet.

    ``transitions`` is a sequence of ``(src, label, dst)`` triples where
    ``label`` is a single alphabet symbol or ``None`` for a spontaneous
    move. States are the integers ``0 .. n_states-1``.
    """

    __slots__ = ("alphabet", "n_states", "transitions", "initial", "accepting", "_adj")

    def __init__(
        self,
        alphabet: Alphabet,
        n_states: int,
        transitions: Iterable[tuple[int, Optional[str], int]],
        initial: Iterable[int],
        accepting: Iterable[int],
    ):
        _check_cap(n_states)
        trans = tuple(transitions)
        init = frozenset(initial)
        acc = frozenset(accepting)
        for p, a, q in trans:
            if not (0 <= p < n_states and 0 <= q < n_states):
                raise InputError(f"transition ({p},{a!r},{q}) references a state out of range")
            if a is not None and a not in alphabet:
                raise InputError(f"transition symbol {a!r} is not in alphabet {alphabet}")
        for s in init | acc:
            if not 0 <= s < n_states:
                raise InputError(f"state {s} out of range")
        object.__setattr__(self, "alphabet", alphabet)
        object.__setattr__(self, "n_states", n_states)
        object.__setattr__(self, "transitions", trans)
        object.__setattr__(self, "initial", init)
        object.__setattr__(self, "accepting", acc)
        object.__setattr__(self, "_adj", None)

    def __setattr__(self, name, value):
        raise AttributeError("Fsa is immutable")

    def adjacency(self) -> dict[int, list[tuple[Optional[str], int]]]:
        """state -> list of (label, dst); computed once, duplicates kept."""
        if self._adj is None:
            adj: dict[int, list[tuple[Optional[str], int]]] = {s: [] for s in range(self.n_states)}
            for p, a, q in self.transitions:
                adj[p].append((a, q))
            object.__setattr__(self, "_adj", adj)
        return self._adj

    def is_deterministic(self) -> bool:
        if len(self.initial) != 1:
            return False
        seen = set()
        for p, a, q in self.transitions:
            if a is None or (p, a) in seen:
                return False
            seen.add((p, a))
        return True

    def __repr__(self) -> str:
        return (
            f"Fsa(states={self.n_states}, transitions={len(self.transitions)}, "
            f"initial={sorted(self.initial)}, accepting={sorted(self.accepting)})"
        )


def _require_same_alphabet(l: Fsa, r: Fsa) -> None:
    if l.alphabet != r.alphabet:
        raise AlphabetMismatchError(f"mixed alphabets: {l.alphabet} vs {r.alphabet}")


# ---------------------------------------------------------------------------
# Elementary acceptors


def empty_fsa(alphabet: Alphabet) -> Fsa:
    return Fsa(alphabet, 0, (), (), ())


def epsilon_fsa(alphabet: Alphabet) -> Fsa:
    return Fsa(alphabet, 1, (), (0,), (0,))


def symbol_fsa(alphabet: Alphabet, symbol: str) -> Fsa:
    if symbol not in alphabet:
        raise InputError(f"symbol {symbol!r} is not in alphabet {alphabet}")
    return Fsa(alphabet, 2, ((0, symbol, 1),), (0,), (1,))


def word_fsa(word: Word) -> Fsa:
    trans = [(i, c, i + 1) for i, c in enumerate(word.text)]
    return Fsa(word.alphabet, len(word.text) + 1, trans, (0,), (len(word.text),))


def word_set_fsa(alphabet: Alphabet, words: Iterable[Word]) -> Fsa:
    """Trie acceptor for a finite set of words (deterministic)."""
    next_state = {(): 0}
    trans = []
    accepting = set()
    n = 1
    for w in sorted(set(words)):
        if w.alphabet != alphabet:
            raise AlphabetMismatchError(f"word {w!r} is not over alphabet {alphabet}")
        node = ()
        for c in w.text:
            child = node + (c,)
            if child not in next_state:
                next_state[child] = n
                trans.append((next_state[node], c, n))
                n += 1
            node = child
        accepting.add(next_state[node])
    return Fsa(alphabet, n, trans, (0,), accepting)


def full_language_fsa(alphabet: Alphabet) -> Fsa:
    """Acceptor for every word over the alphabet."""
    return Fsa(alphabet, 1, tuple((0, c, 0) for c in alphabet), (0,), (0,))


# ---------------------------------------------------------------------------
# Simulation and structural cleanup


def _epsilon_closure(f: Fsa, states: Iterable[int]) -> frozenset[int]:
    adj = f.adjacency()
    seen = set(states)
    stack = list(seen)
    while stack:
        p = stack.pop()
        for a, q in adj[p]:
            if a is None and q not in seen:
                seen.add(q)
                stack.append(q)
    return frozenset(seen)


def accepts(f: Fsa, word) -> bool:
    """Membership test; ``word`` may be a Word or a plain string."""
    text = word.text if isinstance(word, Word) else word
    current = _epsilon_closure(f, f.initial)
    adj = f.adjacency()
    for c in text:
        if c not in f.alphabet:
            raise InputError(f"symbol {c!r} is not in alphabet {f.alphabet}")
        nxt = {q for p in current for a, q in adj[p] if a == c}
        if not nxt:
            return False
        current = _epsilon_closure(f, nxt)
    return bool(current & f.accepting)


def trim(f: Fsa) -> Fsa:
    """Restrict to states both reachable and co-reachable.

    Preserves parallel duplicate transitions, so run multiplicities of
    the kept states are untouched.
    """
    fwd = defaultdict(list)
    bwd = defaultdict(list)
    for p, _a, q in f.transitions:
        fwd[p].append(q)
        bwd[q].append(p)

    def closure(seeds, edges):
        seen = set(seeds)
        stack = list(seen)
        while stack:
            p = stack.pop()
            for q in edges[p]:
                if q not in seen:
                    seen.add(q)
                    stack.append(q)
        return seen

    useful = closure(f.initial, fwd) & closure(f.accepting, bwd)
    if not useful:
        return empty_fsa(f.alphabet)
    order = sorted(useful)
    index = {s: i for i, s in enumerate(order)}
    trans = [(index[p], a, index[q]) for p, a, q in f.transitions if p in useful and q in useful]
    return Fsa(
        f.alphabet,
        len(order),
        trans,
        (index[s] for s in f.initial if s in useful),
        (index[s] for s in f.accepting if s in useful),
    )


def eliminate_epsilon(f: Fsa) -> Fsa:
    """Equivalent spontaneous-move-free acceptor (language only; run
    multiplicities are not preserved)."""
    f = trim(f)
    if f.n_states == 0:
        return f
    closures = [_epsilon_closure(f, (s,)) for s in range(f.n_states)]
    adj = f.adjacency()
    trans = set()
    for p in range(f.n_states):
        for m in closures[p]:
            for a, q in adj[m]:
                if a is not None:
                    trans.add((p, a, q))
    accepting = {p for p in range(f.n_states) if closures[p] & f.accepting}
    return trim(Fsa(f.alphabet, f.n_states, sorted(trans), f.initial, accepting))


def determinize(f: Fsa, complete: bool = False) -> Fsa:
    """Subset construction. With ``complete=True`` the result has a total
    transition function (an explicit sink is added when needed)."""
    g = eliminate_epsilon(f)
    symbols = g.alphabet.symbols
    if g.n_states == 0:
        if not complete:
            return empty_fsa(g.alphabet)
        return Fsa(g.alphabet, 1, tuple((0, c, 0) for c in symbols), (0,), ())
    moves = defaultdict(set)
    for p, a, q in g.transitions:
        moves[(p, a)].add(q)
    start = frozenset(g.initial)
    index = {start: 0}
    queue = deque([start])
    trans = []
    sink: Optional[int] = None
    while queue:
        subset = queue.popleft()
        src = index[subset]
        for c in symbols:
            target = frozenset(q for p in subset for q in moves.get((p, c), ()))
            if not target:
                if complete:
                    if sink is None:
                        sink = len(index)
                        _check_cap(sink + 1)
                        index[frozenset((-1,))] = sink
                        trans.extend((sink, c2, sink) for c2 in symbols)
                    trans.append((src, c, sink))
                continue
            if target not in index:
                _check_cap(len(index) + 1)
                index[target] = len(index)
                queue.append(target)
            trans.append((src, c, index[target]))
    accepting = [i for subset, i in index.items() if subset & g.accepting]
    return Fsa(g.alphabet, len(index), trans, (0,), accepting)


def minimize(f: Fsa) -> Fsa:
    """Minimal trimmed DFA for the language (Moore partition refinement)."""
    d = determinize(f, complete=True)
    symbols = d.alphabet.symbols
    succ = {}
    for p, a, q in d.transitions:
        succ[(p, a)] = q
    block = [0 if s in d.accepting else 1 for s in range(d.n_states)]
    while True:
        signature = {}
        new_block = []
        for s in range(d.n_states):
            sig = (block[s],) + tuple(block[succ[(s, c)]] for c in symbols)
            if sig not in signature:
                signature[sig] = len(signature)
            new_block.append(signature[sig])
        if new_block == block:
            break
        block = new_block
    n_blocks = max(block) + 1
    trans = sorted({(block[p], a, block[q]) for (p, a), q in succ.items()})
    init = {block[s] for s in d.initial}
    acc = {block[s] for s in d.accepting}
    return trim(Fsa(d.alphabet, n_blocks, trans, init, acc))


def _shift(transitions, by):
    return [(p + by, a, q + by) for p, a, q in transitions]


# ---------------------------------------------------------------------------
# Boolean and monoid combinations


def union(l: Fsa, r: Fsa) -> Fsa:
    _require_same_alphabet(l, r)
    n = l.n_states + r.n_states
    trans = list(l.transitions) + _shift(r.transitions, l.n_states)
    init = set(l.initial) | {s + l.n_states for s in r.initial}
    acc = set(l.accepting) | {s + l.n_states for s in r.accepting}
    return Fsa(l.alphabet, n, trans, init, acc)


def intersection(l: Fsa, r: Fsa) -> Fsa:
    _require_same_alphabet(l, r)
    a = eliminate_epsilon(l)
    b = eliminate_epsilon(r)
    if a.n_states == 0 or b.n_states == 0:
        return empty_fsa(l.alphabet)
    amoves = defaultdict(list)
    for p, c, q in set(a.transitions):
        amoves[(p, c)].append(q)
    bmoves = defaultdict(list)
    for p, c, q in set(b.transitions):
        bmoves[(p, c)].append(q)
    index = {}
    queue = deque()
    for p in a.initial:
        for q in b.initial:
            if (p, q) not in index:
                index[(p, q)] = len(index)
                queue.append((p, q))
    trans = []
    while queue:
        p, q = queue.popleft()
        src = index[(p, q)]
        for c in l.alphabet.symbols:
            for p2 in amoves.get((p, c), ()):
                for q2 in bmoves.get((q, c), ()):
                    if (p2, q2) not in index:
                        _check_cap(len(index) + 1)
                        index[(p2, q2)] = len(index)
                        queue.append((p2, q2))
                    trans.append((src, c, index[(p2, q2)]))
    acc = [i for (p, q), i in index.items() if p in a.accepting and q in b.accepting]
    return trim(Fsa(l.alphabet, len(index), trans, (index[pq] for pq in index if pq[0] in a.initial and pq[1] in b.initial), acc))


def complement(f: Fsa) -> Fsa:
    d = determinize(f, complete=True)
    flipped = Fsa(
        d.alphabet,
        d.n_states,
        d.transitions,
        d.initial,
        set(range(d.n_states)) - d.accepting,
    )
    return trim(flipped)


def difference(l: Fsa, r: Fsa) -> Fsa:
    _require_same_alphabet(l, r)
    return intersection(l, complement(r))


def concat(l: Fsa, r: Fsa) -> Fsa:
    _require_same_alphabet(l, r)
    n = l.n_states + r.n_states
    trans = list(l.transitions) + _shift(r.transitions, l.n_states)
    trans += [(p, None, q + l.n_states) for p in l.accepting for q in r.initial]
    return Fsa(l.alphabet, n, trans, l.initial, {s + l.n_states for s in r.accepting})


def star(f: Fsa) -> Fsa:
    hub = f.n_states
    trans = list(f.transitions)
    trans += [(hub, None, q) for q in f.initial]
    trans += [(p, None, hub) for p in f.accepting]
    return Fsa(f.alphabet, f.n_states + 1, trans, (hub,), (hub,))


def plus(f: Fsa) -> Fsa:
    trans = list(f.transitions)
    trans += [(p, None, q) for p in f.accepting for q in f.initial]
    return Fsa(f.alphabet, f.n_states, trans, f.initial, f.accepting)


def factor_closure(f: Fsa) -> Fsa:
    """Acceptor for every factor of every accepted word."""
    g = trim(f)
    if g.n_states == 0:
        return g
    everything = range(g.n_states)
    return Fsa(g.alphabet, g.n_states, g.transitions, everything, everything)


def left_quotient_lang(l: Fsa, r: Fsa) -> Fsa:
    """Acceptor for L⁻¹R = { s : x·s ∈ R for some x ∈ L }."""
    _require_same_alphabet(l, r)
    a = eliminate_epsilon(l)
    b = eliminate_epsilon(r)
    if a.n_states == 0 or b.n_states == 0:
        return empty_fsa(l.alphabet)
    amoves = defaultdict(list)
    for p, c, q in set(a.transitions):
        amoves[(p, c)].append(q)
    bmoves = defaultdict(list)
    for p, c, q in set(b.transitions):
        bmoves[(p, c)].append(q)
    seen = {(p, q) for p in a.initial for q in b.initial}
    queue = deque(seen)
    starts = set()
    while queue:
        p, q = queue.popleft()
        if p in a.accepting:
            starts.add(q)
        for c in l.alphabet.symbols:
            for p2 in amoves.get((p, c), ()):
                for q2 in bmoves.get((q, c), ()):
                    if (p2, q2) not in seen:
                        _check_cap(len(seen) + 1)
                        seen.add((p2, q2))
                        queue.append((p2, q2))
    return trim(Fsa(b.alphabet, b.n_states, b.transitions, starts, b.accepting))


# ---------------------------------------------------------------------------
# Decision procedures


def is_empty(f: Fsa) -> bool:
    return trim(f).n_states == 0


def is_universal(f: Fsa) -> bool:
    return is_empty(complement(f))


def includes(l: Fsa, r: Fsa) -> bool:
    """True iff the language of ``l`` contains the language of ``r``."""
    _require_same_alphabet(l, r)
    return is_empty(intersection(r, complement(l)))


def equivalent(l: Fsa, r: Fsa) -> bool:
    return includes(l, r) and includes(r, l)


def shortest_word(f: Fsa) -> Optional[Word]:
    """Shortlex-least accepted word, or None when the language is empty."""
    g = eliminate_epsilon(f)
    if g.n_states == 0:
        return None
    moves = defaultdict(set)
    for p, a, q in set(g.transitions):
        moves[(p, a)].add(q)
    start = frozenset(g.initial)
    if start & g.accepting:
        return Word(g.alphabet, "")
    seen = {start}
    queue = deque([(start, "")])
    while queue:
        subset, prefix = queue.popleft()
        for c in g.alphabet.symbols:  # declared order gives shortlex
            target = frozenset(q for p in subset for q in moves.get((p, c), ()))
            if not target or target in seen:
                continue
            if target & g.accepting:
                return Word(g.alphabet, prefix + c)
            seen.add(target)
            queue.append((target, prefix + c))
    return None


def enumerate_words(f: Fsa, max_len: int) -> list[Word]:
    """All accepted words of length at most ``max_len``, shortlex-sorted."""
    g = eliminate_epsilon(f)
    out = []
    if g.n_states == 0:
        return out
    moves = defaultdict(set)
    for p, a, q in set(g.transitions):
        moves[(p, a)].add(q)
    level = [("", frozenset(g.initial))]
    for length in range(max_len + 1):
        for prefix, subset in level:
            if subset & g.accepting:
                out.append(Word(g.alphabet, prefix))
        if length == max_len:
            break
        nxt = []
        for prefix, subset in level:
            for c in g.alphabet.symbols:
                target = frozenset(q for p in subset for q in moves.get((p, c), ()))
                if target:
                    nxt.append((prefix + c, target))
        level = nxt
    return out


def enumerate_finite_language(f: Fsa) -> list[Word]:
    """All accepted words of a finite language, shortlex-sorted.

    Raises :class:`PreconditionError` when the trimmed acceptor has a
    cycle, i.e. the language is infinite.
    """
    g = eliminate_epsilon(f)
    if g.n_states == 0:
        return []
    adj = g.adjacency()
    color = [0] * g.n_states  # 0 unseen, 1 on stack, 2 done
    order = []

    def visit(s: int) -> None:
        color[s] = 1
        for _a, q in adj[s]:
            if color[q] == 1:
                raise PreconditionError("language is infinite (acceptor has a cycle)")
            if color[q] == 0:
                visit(q)
        color[s] = 2
        order.append(s)

    for s in range(g.n_states):
        if color[s] == 0:
            visit(s)

    suffixes: dict[int, set[str]] = {}
    for s in order:  # reverse topological: successors first
        words = {""} if s in g.accepting else set()
        for a, q in adj[s]:
            words.update(a + w for w in suffixes[q])
        suffixes[s] = words
    texts = set()
    for s in g.initial:
        texts.update(suffixes[s])
    return sorted(Word(g.alphabet, t) for t in texts)


# ---------------------------------------------------------------------------
# Run-counting ambiguity


def is_unambiguous(f: Fsa) -> bool:
    """True iff every accepted word has exactly one accepting run.

    A run is the full sequence of transitions taken, spontaneous moves
    included, so parallel duplicate transitions and alternative
    spontaneous routes count as distinct runs.
    """
    return _find_ambiguous_word(f) is None


def ambiguity_witness(f: Fsa) -> Optional[Word]:
    """Some word accepted by at least two distinct runs, or None when the
    acceptor is run-unambiguous."""
    text = _find_ambiguous_word(f)
    return None if text is None else Word(f.alphabet, text)


def _shortest_raw_paths(f: Fsa, seeds, reverse: bool) -> dict[int, str]:
    """Shortest word (by arc count) from a seed to each state, following
    raw transitions; with ``reverse`` the words lead into the seeds."""
    adj = defaultdict(list)
    for p, a, q in f.transitions:
        if reverse:
            adj[q].append((a, p))
        else:
            adj[p].append((a, q))
    words = {s: "" for s in seeds}
    queue = deque(words)
    while queue:
        s = queue.popleft()
        for a, t in adj[s]:
            if t not in words:
                piece = "" if a is None else a
                words[t] = piece + words[s] if reverse else words[s] + piece
                queue.append(t)
    return words


def _find_ambiguous_word(f: Fsa) -> Optional[str]:
    f = trim(f)
    n = f.n_states
    if n == 0:
        return None

    eps_out = defaultdict(list)
    sym_trans = []
    for p, a, q in f.transitions:
        if a is None:
            eps_out[p].append(q)
        else:
            sym_trans.append((p, a, q))

    def witness_through(state: int) -> str:
        into = _shortest_raw_paths(f, f.initial, reverse=False)
        outof = _shortest_raw_paths(f, f.accepting, reverse=True)
        return into[state] + outof[state]

    # Any spontaneous cycle among useful states yields unboundedly many
    # runs for some accepted word.
    color = [0] * n
    stack = []
    for root in range(n):
        if color[root]:
            continue
        stack.append((root, iter(eps_out[root])))
        color[root] = 1
        while stack:
            s, it = stack[-1]
            advanced = False
            for q in it:
                if color[q] == 1:
                    return witness_through(q)
                if color[q] == 0:
                    color[q] = 1
                    stack.append((q, iter(eps_out[q])))
                    advanced = True
                    break
            if not advanced:
                color[s] = 2
                stack.pop()

    # Saturating count (0, 1, >=2) of distinct spontaneous paths p -> q.
    topo = []
    seen = [False] * n
    def topo_visit(s: int) -> None:
        seen[s] = True
        for q in eps_out[s]:
            if not seen[q]:
                topo_visit(q)
        topo.append(s)
    for s in range(n):
        if not seen[s]:
            topo_visit(s)
    npaths = [defaultdict(int) for _ in range(n)]
    for s in topo:  # successors already done
        npaths[s][s] = 1
        for q in eps_out[s]:
            for t, c in npaths[q].items():
                npaths[s][t] = min(2, npaths[s][t] + c)

    # Spontaneous paths into acceptance, per state.
    tails = [min(2, sum(npaths[s][t] for t in f.accepting if t in npaths[s])) for s in range(n)]

    # A "position" is a state a run occupies between consumed symbols:
    # an initial state or the target of a symbol transition. A move
    # folds one spontaneous path and one symbol transition together.
    sym_by_src = defaultdict(list)
    for p, a, q in sym_trans:
        sym_by_src[p].append((a, q))

    def moves_from(p: int) -> dict[tuple[str, int], int]:
        counts: dict[tuple[str, int], int] = defaultdict(int)
        for m, k in npaths[p].items():
            for a, q in sym_by_src.get(m, ()):
                counts[(a, q)] = min(2, counts[(a, q)] + k)
        return counts

    completions: Optional[dict[int, str]] = None

    def completion(state: int) -> str:
        nonlocal completions
        if completions is None:
            completions = _shortest_raw_paths(f, f.accepting, reverse=True)
        return completions[state]

    access = {p: "" for p in f.initial}
    queue = deque(access)
    moves: dict[int, dict[str, list[int]]] = {}
    while queue:
        p = queue.popleft()
        if tails[p] >= 2:
            return access[p]  # two spontaneous routes into acceptance
        counts = moves_from(p)
        by_symbol: dict[str, list[int]] = defaultdict(list)
        for (a, q), k in counts.items():
            if k >= 2:
                return access[p] + a + completion(q)  # duplicated move
            by_symbol[a].append(q)
            if q not in access:
                access[q] = access[p] + a
                queue.append(q)
        moves[p] = by_symbol

    # Two runs over the same word: track unordered diverged state pairs.
    pairword: dict[tuple[int, int], str] = {}
    pending = deque()

    def push(p: int, q: int, word: str) -> None:
        key = (p, q) if p <= q else (q, p)
        if key not in pairword:
            pairword[key] = word
            pending.append(key)

    inits = sorted(f.initial)
    for i, p in enumerate(inits):
        for q in inits[i + 1:]:
            push(p, q, "")
    for p in moves:
        for a, targets in moves[p].items():
            for i, q1 in enumerate(targets):
                for q2 in targets[i + 1:]:
                    push(q1, q2, access[p] + a)

    while pending:
        key = pending.popleft()
        p, q = key
        word = pairword[key]
        if tails[p] >= 1 and tails[q] >= 1:
            return word  # both diverged runs accept here
        for a, ptargets in moves.get(p, {}).items():
            qtargets = moves.get(q, {}).get(a, ())
            for p2 in ptargets:
                for q2 in qtargets:
                    push(p2, q2, word + a)
    return None


# ---------------------------------------------------------------------------
# Regex dialect: parsing and synthesis


class _RegexParser:
    """Dialect: single-character symbols, ``|`` union, juxtaposition,
    postfix ``*`` and ``+``, parentheses, ``_`` for the empty word;
    whitespace ignored."""

    def __init__(self, text: str, alphabet: Alphabet):
        self.text = text
        self.alphabet = alphabet
        self.pos = 0

    def error(self, message: str) -> RegexSyntaxError:
        return RegexSyntaxError(message, self.pos)

    def peek(self) -> Optional[str]:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1
        if self.pos >= len(self.text):
            return None
        return self.text[self.pos]

    def parse(self) -> Fsa:
        node = self.alternation()
        if self.peek() is not None:
            raise self.error(f"unexpected {self.text[self.pos]!r}")
        return trim(node)

    def alternation(self) -> Fsa:
        parts = [self.concatenation()]
        while self.peek() == "|":
            self.pos += 1
            parts.append(self.concatenation())
        node = parts[0]
        for p in parts[1:]:
            node = union(node, p)
        return node

    def concatenation(self) -> Fsa:
        parts = []
        while True:
            c = self.peek()
            if c is None or c in "|)":
                break
            parts.append(self.repetition())
        if not parts:
            raise self.error("expected a symbol, '(', or '_'")
        node = parts[0]
        for p in parts[1:]:
            node = concat(node, p)
        return node

    def repetition(self) -> Fsa:
        node = self.atom()
        while self.peek() in ("*", "+"):
            if self.text[self.pos] == "*":
                node = star(node)
            else:
                node = plus(node)
            self.pos += 1
        return node

    def atom(self) -> Fsa:
        c = self.peek()
        if c is None:
            raise self.error("unexpected end of expression")
        if c == "(":
            self.pos += 1
            node = self.alternation()
            if self.peek() != ")":
                raise self.error("expected ')'")
            self.pos += 1
            return node
        if c == "_":
            self.pos += 1
            return epsilon_fsa(self.alphabet)
        if c in "*+)":
            raise self.error(f"unexpected {c!r}")
        if c not in self.alphabet:
            raise self.error(f"symbol {c!r} is not in the alphabet")
        self.pos += 1
        return symbol_fsa(self.alphabet, c)


def regex_to_fsa(expr: str, alphabet: Alphabet) -> Fsa:
    """Compile a regex in the library dialect to a trimmed acceptor."""
    return _RegexParser(expr, alphabet).parse()


# Regex synthesis (state elimination). AST: None is the empty language;
# otherwise ("eps",) | ("sym", c) | ("alt", parts) | ("cat", parts) |
# ("star", x).

_EPS = ("eps",)


def _alt(a, b):
    if a is None:
        return b
    if b is None:
        return a
    parts = (a[1] if a[0] == "alt" else [a]) + (b[1] if b[0] == "alt" else [b])
    dedup = []
    for p in parts:
        if p not in dedup:
            dedup.append(p)
    return dedup[0] if len(dedup) == 1 else ("alt", dedup)


def _cat(a, b):
    if a is None or b is None:
        return None
    if a == _EPS:
        return b
    if b == _EPS:
        return a
    parts = (a[1] if a[0] == "cat" else [a]) + (b[1] if b[0] == "cat" else [b])
    return ("cat", parts)


def _star(a):
    if a is None or a == _EPS:
        return _EPS
    if a[0] == "star":
        return a
    return ("star", a)


def _render(node, level: int = 0) -> str:
    # level 0: alternation context, 1: concatenation, 2: repetition operand
    if node == _EPS:
        return "_"
    kind = node[0]
    if kind == "sym":
        return node[1]
    if kind == "alt":
        body = "|".join(_render(p, 0) for p in node[1])
        return f"({body})" if level >= 1 else body
    if kind == "cat":
        body = "".join(_render(p, 1) for p in node[1])
        return f"({body})" if level >= 2 else body
    if kind == "star":
        return _render(node[1], 2) + "*"
    raise AssertionError(f"unknown node {node!r}")


def fsa_to_regex(f: Fsa) -> Optional[str]:
    """Regex (library dialect) for the language; None when it is empty."""
    g = trim(f)
    if g.n_states == 0:
        return None
    source, sink = g.n_states, g.n_states + 1
    arcs: dict[tuple[int, int], object] = {}

    def add(i, j, node):
        arcs[(i, j)] = _alt(arcs.get((i, j)), node)

    for p, a, q in g.transitions:
        add(p, q, _EPS if a is None else ("sym", a))
    for s in g.initial:
        add(source, s, _EPS)
    for s in g.accepting:
        add(s, sink, _EPS)

    for k in range(g.n_states):
        loop = _star(arcs.pop((k, k), None))
        into = [(i, node) for (i, j), node in arcs.items() if j == k and i != k]
        outof = [(j, node) for (i, j), node in arcs.items() if i == k and j != k]
        for (i, j) in [key for key in arcs if k in key]:
            del arcs[(i, j)]
        for i, rin in into:
            for j, rout in outof:
                add(i, j, _cat(rin, _cat(loop, rout)))

    result = arcs.get((source, sink))
    if result is None:
        return None
    return _render(result)
