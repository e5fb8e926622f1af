"""Global cap on the number of stored terms in any single exact object."""

from __future__ import annotations

from contextlib import contextmanager

_limit = None


class TermBudgetExceeded(RuntimeError):
    pass


def set_term_budget(limit):
    global _limit
    _limit = None if limit is None else int(limit)


def get_term_budget():
    return _limit


def check_terms(n: int) -> None:
    if _limit is not None and n > _limit:
        raise TermBudgetExceeded(
            f"term budget exceeded: {n} terms > limit {_limit}")


@contextmanager
def term_budget(limit):
    old = _limit
    set_term_budget(limit)
    try:
        yield
    finally:
        set_term_budget(old)
