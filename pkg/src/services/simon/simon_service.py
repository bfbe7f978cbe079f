import logging
from typing import List, Optional, Tuple

from src.exceptions.algorithms import ImpossibleOutcomeError
from src.exceptions.oracles import PromiseViolationError
from src.exceptions.simulation import DimensionMismatchError
from src.logic.subspaces import (
    Subspace,
    basis_labels,
    coordinate_subspace,
    includes,
    meet,
    reduced_support,
    subspace_distinguisher,
)
from src.number_theory.gf2 import dot, solve_gf2, to_bitstring
from src.oracles.classifiers import brute_force_simon_period
from src.oracles.truth_tables import TruthTable
from src.providers.random_provider import RandomSourceInterface
from src.schemas.reports import AlgorithmEnum, GeometryEntry, RunReport
from src.services.base import BaseAlgorithmService
from src.simulation.measurement import marginal_distribution, measure
from src.simulation.registers import two_register_layout
from src.simulation.states import StateVector, basis_state
from src.simulation.unitaries import apply, hadamard_layer, oracle_xor_unitary


logger = logging.getLogger(__name__)

# Candidate-subspace verdicts compare 2^n - 1 subspaces pairwise.
GEOMETRIC_VERDICT_MAX_BITS = 4


def simon_period_subspace(n: int, r: int) -> Subspace:
    """span{|y> : y.r = 0 mod 2}, of dimension 2^(n-1)."""
    if not 0 < r < 2 ** n:
        raise PromiseViolationError("simon", f"period must satisfy 0 < r < {2 ** n}, got {r}")
    return coordinate_subspace([y for y in range(2 ** n) if dot(y, r) == 0], 2 ** n)


def simon_final_state(f: TruthTable, n: int) -> StateVector:
    """|0>|0> -> H on the input -> U_f -> H on the input, before any measurement."""
    size = 2 ** n
    if f.domain_size != size:
        raise DimensionMismatchError("Simon oracle domain", size, f.domain_size)
    if f.codomain_size != size:
        raise DimensionMismatchError("Simon oracle codomain", size, f.codomain_size)
    layout = two_register_layout(size, size)
    state = hadamard_layer(basis_state(layout, (0, 0)), 0)
    state = apply(oracle_xor_unitary(f, layout), state)
    return hadamard_layer(state, 0)


class SimonService(BaseAlgorithmService):
    def simon(
            self,
            f: TruthTable,
            n: int,
            rng: Optional[RandomSourceInterface] = None,
            max_trials: Optional[int] = None
    ) -> RunReport:
        """
        Repeat prepare / H / U_f / H / measure-input and solve y.r = 0 over GF(2)
        until the nonzero solution is unique. Only the input register is measured.
        """
        true_period = brute_force_simon_period(f)
        if true_period is None:
            logger.warning(f"Rejected Simon oracle on {n} bits: not 2-to-1 on XOR cosets")
            raise PromiseViolationError("simon", "f is not 2-to-1 on the cosets of a nonzero period")
        rng = self._rng(rng)
        if max_trials is None:
            max_trials = self.settings.SIMON_TRIALS_PER_BIT * n
        if max_trials < 1:
            raise ValueError(f"max_trials must be positive, got {max_trials}")
        logger.info(f"Running Simon on {n} bits with at most {max_trials} trials")

        final = simon_final_state(f, n)
        records = []
        equations: List[int] = []
        recovered = None
        for trial in range(1, max_trials + 1):
            record = measure(final, 0, rng)
            records.append(record)
            y = record.outcome
            if dot(y, true_period):
                raise ImpossibleOutcomeError("simon", to_bitstring(y, n))
            equations.append(y)
            solutions = solve_gf2(equations, n)
            logger.debug(f"Trial {trial}: y={to_bitstring(y, n)}, null space dimension {len(solutions)}")
            if len(solutions) == 1:
                recovered = solutions[0]
                break

        support = reduced_support(final, 0)
        geometry = [
            GeometryEntry(
                name="input register support",
                dimension=support.dimension,
                contains_final=True,
                basis_labels=basis_labels(support),
            )
        ]
        details = {"n": n, "outcomes": [to_bitstring(record.outcome, n) for record in records]}
        if recovered is not None:
            period_space = simon_period_subspace(n, recovered)
            geometry.append(
                GeometryEntry(
                    name=f"period subspace r={to_bitstring(recovered, n)}",
                    dimension=period_space.dimension,
                    contains_final=includes(period_space, support, self.tolerance),
                    basis_labels=basis_labels(period_space),
                )
            )
            details["period_bits"] = to_bitstring(recovered, n)
        if n <= GEOMETRIC_VERDICT_MAX_BITS:
            candidates = [simon_period_subspace(n, r) for r in range(1, 2 ** n)]
            index = subspace_distinguisher(candidates, support, self.tolerance)
            details["geometric_period"] = None if index is None else index + 1

        report = RunReport(
            algorithm=AlgorithmEnum.SIMON,
            verdict=recovered,
            conclusive=recovered is not None,
            trace=[self._summarize(record) for record in records],
            geometry=geometry,
            trials_used=len(records),
            seed=rng.seed,
            details=details,
        )
        logger.info(f"Simon finished after {report.trials_used} trials: period={recovered}")
        return report

    @staticmethod
    def outcome_support(f: TruthTable, n: int, tolerance: float) -> List[int]:
        """Input-register outcomes with nonzero probability, from the exact distribution."""
        distribution = marginal_distribution(simon_final_state(f, n), 0)
        return [y for y, probability in enumerate(distribution) if probability > tolerance]

    @staticmethod
    def simon_geometry(n: int) -> List[Tuple[int, Subspace]]:
        return [(r, simon_period_subspace(n, r)) for r in range(1, 2 ** n)]

    def simon_geometry_report(self, n: int, seed: int, r: Optional[int] = None) -> RunReport:
        """
        All period subspaces on n bits. The reference is V_r when r is given,
        otherwise the ray |0...0> that every period subspace contains.
        """
        subspaces = self.simon_geometry(n)
        reference = coordinate_subspace([0], 2 ** n) if r is None else simon_period_subspace(n, r)
        return RunReport(
            algorithm=AlgorithmEnum.GEOMETRY,
            conclusive=True,
            geometry=[
                GeometryEntry(
                    name=f"period subspace r={to_bitstring(period, n)}",
                    dimension=sub.dimension,
                    contains_final=includes(sub, reference, self.tolerance),
                    basis_labels=basis_labels(sub),
                )
                for period, sub in subspaces
            ],
            trials_used=0,
            seed=seed,
            details={
                "family": "simon",
                "n": n,
                "reference": "|0...0>" if r is None else f"r={to_bitstring(r, n)}",
                "pairwise_meet_dimensions": sorted({
                    meet(first, second).dimension
                    for i, (_, first) in enumerate(subspaces)
                    for _, second in subspaces[i + 1:]
                }),
            },
        )
