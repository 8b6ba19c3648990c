"""Registry of the independent routes to L_n and the guard filter over them."""

import logging
from dataclasses import dataclass
from typing import Callable, Iterable, Optional

from . import lebesgue, vdc, walsh
from .config import GuardConfig
from .errors import GuardError, InconsistencyError
from .exact import DyadicRational

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Method:
    """One way of computing L_n (equivalently d_n) for a single n."""

    name: str
    compute: Callable[[int, GuardConfig], DyadicRational]
    guard: Optional[str]  # GuardConfig field bounding n, None if only max_index applies
    description: str

    def limit(self, guards: GuardConfig) -> int:
        if self.guard is None:
            return guards.max_index
        return min(getattr(guards, self.guard), guards.max_index)

    def __call__(self, n: int, guards: GuardConfig) -> DyadicRational:
        return self.compute(n, guards)


def _integral(n: int, guards: GuardConfig) -> DyadicRational:
    # L_n(x) does not depend on x; sample it at the point y_n
    return walsh.lebesgue_function(n, vdc.vdc_point(n), max_n=guards.integral_max_n)


def _walsh_sum(n: int, guards: GuardConfig) -> DyadicRational:
    product = n * vdc.walsh_sum_discrepancy(n, max_n=guards.walsh_sum_max_n)
    try:
        return DyadicRational.from_fraction(product)
    except ValueError:
        raise InconsistencyError(f"n * Walsh-sum discrepancy = {product} is not dyadic for n={n}")


METHODS: dict[str, Method] = {
    method.name: method
    for method in (
        Method(
            "fine",
            lambda n, guards: lebesgue.lebesgue_fine(n),
            None,
            "closed form over the binary decomposition",
        ),
        Method(
            "recursion",
            lambda n, guards: lebesgue.lebesgue_recursive(n),
            None,
            "L_2m = L_m, L_2m+1 = (1 + L_m + L_m+1)/2",
        ),
        Method(
            "nearest-int",
            lambda n, guards: lebesgue.lebesgue_nearest_int(n),
            None,
            "sum of distances of n/2^r to the nearest integer",
        ),
        Method(
            "integral",
            _integral,
            "integral_max_n",
            "L1 norm of the Walsh-Dirichlet kernel",
        ),
        Method(
            "discrepancy",
            lambda n, guards: vdc.d_n(n, max_n=guards.sort_max_n),
            "sort_max_n",
            "n times the van der Corput star discrepancy",
        ),
        Method(
            "walsh-sum",
            _walsh_sum,
            "walsh_sum_max_n",
            "Walsh-sum representation of the star discrepancy",
        ),
        Method(
            "l1",
            lambda n, guards: vdc.d_n_via_l1(n, max_n=guards.sort_max_n),
            None,
            "twice the L1 norm of the discrepancy function",
        ),
        Method(
            "l1-blocks",
            lambda n, guards: vdc.d_n_via_l1_blocks(n),
            None,
            "L1 identity summed block by block in closed form",
        ),
    )
}

# The six routes printed by `ln --method all`
LN_METHODS = ("fine", "recursion", "nearest-int", "integral", "discrepancy", "walsh-sum")


def resolve_methods(selection: str | Iterable[str], default_all: Iterable[str] = LN_METHODS) -> list[str]:
    """
    Turn a comma separated list (or "all") into registered method names.

    Order follows the registry so reports do not depend on how the list
    was typed.
    """
    if isinstance(selection, str):
        names = [name.strip() for name in selection.split(",") if name.strip()]
    else:
        names = list(selection)
    if not names:
        raise ValueError("No methods given")

    selected: set[str] = set()
    for name in names:
        if name == "all":
            selected.update(default_all)
        elif name in METHODS:
            selected.add(name)
        else:
            raise ValueError(
                f"Unknown method '{name}'. Must be one of: all, {', '.join(METHODS)}"
            )
    return [name for name in METHODS if name in selected]


class MethodFilter:
    """
    Decide which methods may run for a given n under the configured guards.

    Decisions are cached per method, since each one reduces to comparing n
    with a fixed limit.
    """

    def __init__(self, guards: GuardConfig, names: Iterable[str]):
        """
        Initialize the filter.

        Args:
            guards: Resource guards
            names: Registered method names to consider
        """
        self.guards = guards
        self.methods = [METHODS[name] for name in names]
        self._limits: dict[str, int] = {m.name: m.limit(guards) for m in self.methods}
        self._stats = {"evaluated": 0, "skipped": 0}

    def limit(self, name: str) -> int:
        return self._limits[name]

    def max_limit(self) -> int:
        return max(self._limits.values())

    def applicable(self, name: str, n: int) -> bool:
        decision = n <= self._limits[name]
        self._stats["evaluated" if decision else "skipped"] += 1
        if not decision:
            logger.debug(f"Skipping method '{name}' for n={n} (limit {self._limits[name]})")
        return decision

    def methods_for(self, n: int) -> list[Method]:
        return [m for m in self.methods if self.applicable(m.name, n)]

    def require(self, n: int):
        """Raise GuardError for the first method whose guard n exceeds."""
        for method in self.methods:
            if not self.applicable(method.name, n):
                guard = method.guard or "max_index"
                raise GuardError(f"n ({method.name}, {guard})", n, self._limits[method.name])

    def get_stats(self) -> dict[str, int]:
        return dict(self._stats)
