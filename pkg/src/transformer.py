"""Turn computed values into flat output rows for the CSV and JSON writers."""

from fractions import Fraction
from typing import Any, Iterator

from .asymptotics import CltQuery, MaximizerAlignment, RatioTrajectory, SubsequenceQuery
from .config import OutputConfig
from .exact import DyadicRational, render
from .lebesgue import BlockMaximum, LebesgueTable, decompose

TABLE_COLUMNS = ["n", "L_frac", "L_dec", "Dstar_frac", "nu", "n1"]
LN_COLUMNS = ["n", "method", "L_frac", "L_dec"]
BLOCK_COLUMNS = ["r", "formula_value", "formula_argmax", "brute_value", "brute_argmax", "match"]
GF_COLUMNS = ["n", "coefficient", "L_frac", "diff"]
CLT_COLUMNS = ["N", "y", "count", "total", "fraction", "phi_y"]
SUBSEQ_COLUMNS = ["t", "m", "n_t", "d_frac", "ratio"]
LIMSUP_COLUMNS = ["r", "argmax", "bracket", "closed_form"]
AVERAGE_COLUMNS = ["n", "deviation"]
ALIGNMENT_COLUMNS = ["m", "n_t", "r", "d_frac", "block_frac", "block_argmax", "aligned"]
AE_COLUMNS = ["t", "m", "ratio"]


class Transformer:
    """Render exact values as fixed-column rows."""

    def __init__(self, config: OutputConfig):
        """
        Initialize the transformer.

        Args:
            config: Output configuration (decimal digits)
        """
        self.config = config

    def frac(self, value) -> str:
        return render(value)

    def dec(self, value) -> str:
        return render(value, mode="decimal", digits=self.config.decimal_digits)

    def flt(self, value: float) -> str:
        return f"{value:.{self.config.decimal_digits}f}"

    def table_row(self, n: int, value: DyadicRational) -> dict[str, Any]:
        decomposition = decompose(n)
        return {
            "n": n,
            "L_frac": self.frac(value),
            "L_dec": self.dec(value),
            "Dstar_frac": self.frac(value.to_fraction() / n),
            "nu": decomposition.nu,
            "n1": decomposition.n1,
        }

    def table_rows(self, table: LebesgueTable) -> Iterator[dict[str, Any]]:
        for n in range(1, table.size + 1):
            yield self.table_row(n, table[n])

    def ln_row(self, n: int, method: str, value: DyadicRational) -> dict[str, Any]:
        return {"n": n, "method": method, "L_frac": self.frac(value), "L_dec": self.dec(value)}

    def block_row(self, formula: BlockMaximum, brute: BlockMaximum) -> dict[str, Any]:
        match = formula.value == brute.value and formula.argmax == brute.argmax
        return {
            "r": formula.r,
            "formula_value": self.frac(formula.as_dyadic()),
            "formula_argmax": formula.argmax,
            "brute_value": self.frac(brute.value),
            "brute_argmax": brute.argmax,
            "match": match,
        }

    def gf_row(self, n: int, coefficient: Fraction, value: DyadicRational) -> dict[str, Any]:
        return {
            "n": n,
            "coefficient": self.frac(coefficient),
            "L_frac": self.frac(value),
            "diff": self.frac(coefficient - value.to_fraction()),
        }

    def clt_row(self, query: CltQuery) -> dict[str, Any]:
        return {
            "N": query.N,
            "y": repr(query.y),
            "count": query.count,
            "total": query.total,
            "fraction": self.flt(query.result),
            "phi_y": self.flt(query.phi_y),
        }

    def subseq_row(self, query: SubsequenceQuery) -> dict[str, Any]:
        return {
            "t": self.frac(query.t),
            "m": query.m,
            "n_t": query.n_t,
            "d_frac": self.frac(query.d),
            "ratio": self.flt(query.ratio),
        }

    def limsup_row(self, r: int, argmax: int, bracket: float, closed_form: float) -> dict[str, Any]:
        return {
            "r": r,
            "argmax": argmax,
            "bracket": f"{bracket:.6e}",
            "closed_form": f"{closed_form:.6e}",
        }

    def average_row(self, n: int, deviation: float) -> dict[str, Any]:
        return {"n": n, "deviation": self.flt(deviation)}

    def alignment_row(self, alignment: MaximizerAlignment) -> dict[str, Any]:
        return {
            "m": alignment.m,
            "n_t": alignment.n_t,
            "r": alignment.r,
            "d_frac": self.frac(alignment.d),
            "block_frac": self.frac(DyadicRational.coerce(alignment.block_value)),
            "block_argmax": alignment.block_argmax,
            "aligned": alignment.aligned,
        }

    def ae_rows(self, trajectory: RatioTrajectory) -> Iterator[dict[str, Any]]:
        for m, ratio in enumerate(trajectory.ratios, start=1):
            yield {"t": self.frac(trajectory.t), "m": m, "ratio": self.flt(ratio)}
