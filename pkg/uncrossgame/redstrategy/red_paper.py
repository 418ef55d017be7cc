"""Red's winning strategy: general decomposition, form-B insertion, form-A subgames.

The strategy tracks the game family as counters of canonical bipartitions:

    general: C (laminar, not yet merged) and B (members still to insert)
    form_b:  C_b (members of C left to insert into D) and D (laminar)
    form_a:  S = D plus the inserted X, played until laminar

Every turn it first clamps these counters to the family it is handed, so
members dropped as trivial (or merged by a caller) disappear from the books.
"""
import logging
from collections import Counter
from typing import List, Optional, Tuple

from ..errors import InternalError, StrategyError
from ..game import BlueChoice, GameState, RedMove
from ..ground import Bipartition, Family, crosses_any, remove_trivial
from .red_form_a import FormAView, detect_form_a, form_a_move
from .red_form_b import (FormBView, is_2_partitioned, reduce_form_b,
                         select_maximal, split_laminar)


__all__ = ['PaperRedStrategy', 'paper_red_strategy']


logger = logging.getLogger(__name__)


def _family(counter: Counter, ground) -> Family:
    return Family(counter.elements(), ground)


def _counter_key(counter: Optional[Counter]):
    if counter is None:
        return None
    return tuple(sorted((member.key(), count) for member, count in counter.items()))


class PaperRedStrategy:
    def __init__(self, f):
        self.f = f
        self.phase = 'general'
        self.general_C: Optional[Counter] = None
        self.general_B = Counter()
        self.C_b = Counter()
        self.D = Counter()
        self.S = Counter()
        self.current_X: Optional[Bipartition] = None
        self.anchors: Optional[Tuple[int, int]] = None
        self.pending: Optional[Tuple[int, int]] = None
        self.last_view: Optional[FormAView] = None
        self.progress: Optional[Tuple[int, int]] = None
        self.subgame_log: List[Tuple[int, int]] = []
        self._subgame_n = 0
        self._subgame_iterations = 0

    def clone(self) -> 'PaperRedStrategy':
        other = PaperRedStrategy(self.f)
        for name in ('phase', 'current_X', 'anchors', 'pending', 'last_view',
                     'progress', '_subgame_n', '_subgame_iterations'):
            setattr(other, name, getattr(self, name))
        other.general_C = None if self.general_C is None else Counter(self.general_C)
        other.general_B = Counter(self.general_B)
        other.C_b = Counter(self.C_b)
        other.D = Counter(self.D)
        other.S = Counter(self.S)
        other.subgame_log = list(self.subgame_log)
        return other

    def state_key(self):
        return (self.phase, _counter_key(self.general_C), _counter_key(self.general_B),
                _counter_key(self.C_b), _counter_key(self.D), _counter_key(self.S),
                self.pending, self.anchors, self.progress)

    def dump(self) -> dict:
        state = {'phase': self.phase}
        if self.phase == 'form_b':
            ground = self.current_X.ground if self.current_X is not None else None
            if ground is not None:
                state.update(FormBView(_family(self.C_b, ground), _family(self.D, ground),
                                       self.current_X).dump())
        elif self.phase == 'form_a' and self.last_view is not None:
            state.update(self.last_view.dump())
        return state

    def _books(self):
        books = [self.S, self.D, self.C_b]
        if self.general_C is not None:
            books.append(self.general_C)
        books.append(self.general_B)
        return books

    def _sync(self, family: Family):
        budget = family.counts()
        for book in self._books():
            for member in list(book):
                keep = min(book[member], budget[member])
                budget[member] -= keep
                if keep:
                    book[member] = keep
                else:
                    del book[member]
        leftover = +budget
        if leftover and self.general_C is not None:
            raise InternalError(f'untracked members {sorted(m.key() for m in leftover)}')

    def next_move(self, state: GameState) -> RedMove:
        self._sync(state.family)
        # each pass without a move shrinks C, B or C_b
        for _ in range(4 * len(state.family) + 8):
            if self.phase == 'form_a':
                move = self._form_a_turn(state)
                if move is not None:
                    return move
            elif self.phase == 'form_b':
                self._form_b_turn(state)
            else:
                self._general_turn(state)
        raise InternalError('strategy made no move on a non-laminar family', trace=state.trace)

    def _general_turn(self, state: GameState):
        if self.general_C is None:
            C, B = split_laminar(state.family)
            self.general_C, self.general_B = C.counts(), B.counts()
            logger.debug('general: |C|=%d |B|=%d', len(C), len(B))
        if not self.general_B:
            raise InternalError('nothing left to insert but the family still crosses',
                                trace=state.trace)
        X = min(self.general_B, key=Bipartition.key)
        self.general_B[X] -= 1
        if not self.general_B[X]:
            del self.general_B[X]
        self.C_b = self.general_C
        self.general_C = Counter()
        self.D = Counter({X: 1})
        self.phase = 'form_b'

    def _check_condition_b(self, state: GameState):
        ground = state.ground
        D = _family(self.D, ground)
        for member in self.C_b:
            if not (is_2_partitioned(member, D) or is_2_partitioned(member.flip(), D)):
                raise InternalError(f'{list(member.key())} is 2-partitioned on neither side',
                                    trace=state.trace)

    def _form_b_turn(self, state: GameState):
        ground = state.ground
        if not self.C_b:
            self.general_C = self.D
            self.D = Counter()
            self.current_X = None
            self.phase = 'general'
            return
        X = select_maximal(_family(self.C_b, ground), _family(self.D, ground))
        if X is None:
            raise StrategyError('no member of C is 2-partitioned for D', trace=state.trace)
        self.C_b[X] -= 1
        if not self.C_b[X]:
            del self.C_b[X]
        self.current_X = X
        D = _family(self.D, ground)
        if not crosses_any(X, D.distinct()):
            self.D[X.canon()] += 1
            self._check_condition_b(state)
            return
        view = reduce_form_b(X, D)
        self.S = self.D + Counter({X.canon(): 1})
        self.D = Counter()
        self.anchors = view.anchors()
        self.pending = None
        self.progress = None
        self._subgame_n = view.n
        self._subgame_iterations = 0
        self.phase = 'form_a'
        logger.debug('form B: inserting %s into |D|=%d, subgame on n=%d',
                     sorted(X.representative), len(D), view.n)

    def _end_subgame(self, state: GameState):
        self.subgame_log.append((self._subgame_n, self._subgame_iterations))
        logger.debug('form A subgame on n=%d done in %d iterations',
                     self._subgame_n, self._subgame_iterations)
        self.D = self.S
        self.S = Counter()
        self.anchors = None
        self.pending = None
        self.last_view = None
        self.progress = None
        self.phase = 'form_b'
        self._check_condition_b(state)

    def _form_a_turn(self, state: GameState) -> Optional[RedMove]:
        active = remove_trivial(_family(self.S, state.ground))
        if len(active) == 0:
            self._end_subgame(state)
            return None
        view = detect_form_a(active, hint=self.anchors)
        if view is None:
            raise StrategyError(f'subfamily {active!r} is not of form A', trace=state.trace)
        self.anchors = view.anchors()
        pending, self.pending = self.pending, None
        move = form_a_move(view, self.f, pending=pending)
        self._track_progress(view, len(active), state)
        self.last_view = view
        return move

    def _track_progress(self, view: FormAView, size: int, state: GameState):
        # n+|B| drops within O(d) turns; each duplicate copy can replay those turns
        measure = view.potential()[0]
        if self.progress is None or measure < self.progress[0]:
            self.progress = (measure, 0)
            return
        best, stalled = self.progress
        stalled += 1
        if stalled > 4 * view.n * max(size, 1):
            raise InternalError(f'form A stalled at n+|B|={best} for {stalled} turns',
                                trace=state.trace)
        self.progress = (best, stalled)

    def observe(self, move: RedMove, choice: BlueChoice) -> None:
        if self.phase != 'form_a':
            raise InternalError(f'observed a move in phase {self.phase}')
        X, Y = move.X.canon(), move.Y.canon()
        for member in (X, Y):
            self.S[member] -= 1
            if self.S[member] <= 0:
                del self.S[member]
        for member in move.replacement():
            self.S[member] += 1
        returned = move.returned(choice)
        if returned is not None:
            self.S[returned] += 1
        self._subgame_iterations += 1
        # with no member returned both X and Y are gone and nothing is owed
        if move.branch == 'iii' and move.k > 2 and choice is BlueChoice.Y:
            view = self.last_view
            self.pending = (view.interval(1, move.k - 1), view.interval(2, move.k))


def paper_red_strategy(f) -> PaperRedStrategy:
    return PaperRedStrategy(f)
