from .another_sol import (NO_MORE, AnotherSolEnumerator, AnotherSolProcedure, EnumeratorAnotherSol,
                          IncrementalBoundWarning, another_sol_from_enumerator,
                          enumerator_from_another_sol)
from .queue import QUEUE_BOOKKEEPING, QueueAmortizer, queue_amortize, queue_delay_bound
from .shortcut import GapBudgetExceeded, ShortcutRegularizer, shortcut_delay_bound, shortcut_regularize
from .stock import DensityViolation, StockRegularizer, stock_delay_bound, stock_regularize

__all__ = [
    "NO_MORE", "AnotherSolEnumerator", "AnotherSolProcedure", "EnumeratorAnotherSol",
    "IncrementalBoundWarning", "another_sol_from_enumerator", "enumerator_from_another_sol",
    "QUEUE_BOOKKEEPING", "QueueAmortizer", "queue_amortize", "queue_delay_bound",
    "GapBudgetExceeded", "ShortcutRegularizer", "shortcut_delay_bound", "shortcut_regularize",
    "DensityViolation", "StockRegularizer", "stock_delay_bound", "stock_regularize",
]
