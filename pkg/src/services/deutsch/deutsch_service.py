import logging
from functools import lru_cache
from typing import Optional, Tuple

import numpy as np

from src.exceptions.algorithms import ImpossibleOutcomeError
from src.exceptions.oracles import CodomainError
from src.exceptions.simulation import DimensionMismatchError
from src.exceptions.subspaces import StateOutsideCandidatesError
from src.logic.subspaces import (
    Subspace,
    basis_labels,
    commutes,
    contains,
    coordinate_subspace,
    join,
    meet,
    orthocomplement,
    span,
    subspace_distinguisher,
)
from src.oracles.classifiers import require_promise
from src.oracles.generators import named_deutsch_oracle
from src.oracles.truth_tables import PromiseKindEnum, PromiseTag, TruthTable
from src.providers.random_provider import RandomSourceInterface
from src.schemas.cli import DeutschStrategyEnum
from src.schemas.reports import AlgorithmEnum, GeometryEntry, RunReport, VerdictEnum
from src.services.base import BaseAlgorithmService
from src.simulation.measurement import marginal_distribution, measure
from src.simulation.registers import two_register_layout
from src.simulation.states import StateVector, basis_state, register_factor, states_equal_up_to_phase
from src.simulation.unitaries import apply, hadamard_layer, hadamard_unitary, oracle_xor_unitary


logger = logging.getLogger(__name__)

VERDICTS = (VerdictEnum.CONSTANT, VerdictEnum.BALANCED)


def _check_boolean_oracle(f: TruthTable) -> None:
    if f.domain_size != 2:
        raise DimensionMismatchError("Deutsch oracle domain", 2, f.domain_size)
    if f.codomain_size != 2:
        raise CodomainError(2, f.codomain_size)


def xor_oracle_stage(f: TruthTable) -> StateVector:
    """|0>|0> -> H on the input -> U_f: the state the final Hadamards act on."""
    layout = two_register_layout(2, 2)
    state = hadamard_layer(basis_state(layout, (0, 0)), 0)
    return apply(oracle_xor_unitary(f, layout), state)


def _to_final_basis(state: StateVector) -> StateVector:
    return hadamard_layer(hadamard_layer(state, 0), 1)


def jozsa_final_state(f: TruthTable, n: int) -> StateVector:
    """|0...0>|1> -> H on both registers -> U_f -> H on the input."""
    layout = two_register_layout(2 ** n, 2)
    state = basis_state(layout, (0, 1))
    state = hadamard_layer(hadamard_layer(state, 0), 1)
    state = apply(oracle_xor_unitary(f, layout), state)
    return hadamard_layer(state, 0)


@lru_cache(maxsize=1)
def deutsch_planes() -> Tuple[Subspace, Subspace]:
    """The constant plane P_c and balanced plane P_b spanned by the oracle-stage states."""
    constant = span(
        [xor_oracle_stage(named_deutsch_oracle(name)) for name in ("constant0", "constant1")], 4
    )
    balanced = span(
        [xor_oracle_stage(named_deutsch_oracle(name)) for name in ("identity", "not")], 4
    )
    return constant, balanced


@lru_cache(maxsize=1)
def deutsch_final_planes() -> Tuple[Subspace, Subspace]:
    """P_c and P_b after the closing H on both registers, where they are coordinate planes."""
    layout = two_register_layout(2, 2)
    planes = []
    for plane in deutsch_planes():
        images = [_to_final_basis(StateVector(amplitudes=column, layout=layout)) for column in plane.basis.T]
        planes.append(span(images, 4))
    return planes[0], planes[1]


class DeutschService(BaseAlgorithmService):
    def deutsch_xor(
            self,
            f: TruthTable,
            rng: Optional[RandomSourceInterface] = None,
            strategy: DeutschStrategyEnum = DeutschStrategyEnum.BOTH_REGISTERS
    ) -> RunReport:
        """
        Original XOR algorithm: conclusive with probability 1/2.

        The outcome 00 lies in both final planes and is inconclusive; 01 lies only
        in the constant plane and 11 only in the balanced plane.
        """
        _check_boolean_oracle(f)
        rng = self._rng(rng)
        logger.info(f"Running Deutsch XOR on f={f.values} with strategy {strategy.value}")

        pre_final = xor_oracle_stage(f)
        final = _to_final_basis(pre_final)
        constant_plane, balanced_plane = deutsch_planes()
        geometric_index = subspace_distinguisher([constant_plane, balanced_plane], pre_final, self.tolerance)

        if strategy == DeutschStrategyEnum.OUTPUT_FIRST:
            verdict_index, records = self._output_first(final, rng)
        else:
            verdict_index, records = self._both_registers(final, rng)

        joint = np.abs(final.amplitudes) ** 2
        distribution = {f"{x}{y}": float(joint[final.layout.composite_index((x, y))]) for x in (0, 1) for y in (0, 1)}
        intersection = meet(constant_plane, balanced_plane)
        final_constant, final_balanced = deutsch_final_planes()

        report = RunReport(
            algorithm=AlgorithmEnum.DEUTSCH_XOR,
            verdict=None if verdict_index is None else VERDICTS[verdict_index],
            conclusive=verdict_index is not None,
            trace=[self._summarize(record) for record in records],
            geometry=[
                GeometryEntry(
                    name="constant plane P_c",
                    dimension=constant_plane.dimension,
                    contains_final=contains(constant_plane, pre_final, self.tolerance),
                ),
                GeometryEntry(
                    name="balanced plane P_b",
                    dimension=balanced_plane.dimension,
                    contains_final=contains(balanced_plane, pre_final, self.tolerance),
                ),
                GeometryEntry(
                    name="P_c meet P_b",
                    dimension=intersection.dimension,
                    contains_final=contains(intersection, pre_final, self.tolerance),
                ),
                GeometryEntry(
                    name="constant plane after final H",
                    dimension=final_constant.dimension,
                    contains_final=contains(final_constant, final, self.tolerance),
                    basis_labels=basis_labels(final_constant),
                ),
                GeometryEntry(
                    name="balanced plane after final H",
                    dimension=final_balanced.dimension,
                    contains_final=contains(final_balanced, final, self.tolerance),
                    basis_labels=basis_labels(final_balanced),
                ),
            ],
            trials_used=1,
            seed=rng.seed,
            details={
                "strategy": strategy.value,
                "distribution": distribution,
                "geometric_verdict": VERDICTS[geometric_index].value,
            },
        )
        logger.info(f"Deutsch XOR finished: verdict={report.verdict}, conclusive={report.conclusive}")
        return report

    def _both_registers(self, final: StateVector, rng: RandomSourceInterface):
        input_record = measure(final, 0, rng)
        output_record = measure(input_record.post_state, 1, rng)
        outcome = (input_record.outcome, output_record.outcome)
        label = f"{outcome[0]}{outcome[1]}"
        point = basis_state(final.layout, outcome)
        try:
            verdict_index = subspace_distinguisher(list(deutsch_final_planes()), point, self.tolerance)
        except StateOutsideCandidatesError:
            logger.error(f"Deutsch XOR measured {label}, which is orthogonal to both planes")
            raise ImpossibleOutcomeError("deutsch_xor", label)
        return verdict_index, [input_record, output_record]

    @staticmethod
    def _output_first(final: StateVector, rng: RandomSourceInterface):
        output_record = measure(final, 1, rng)
        if output_record.outcome == 0:
            return None, [output_record]
        input_record = measure(output_record.post_state, 0, rng)
        return input_record.outcome, [output_record, input_record]

    def deutsch_cleve(
            self,
            f: TruthTable,
            rng: Optional[RandomSourceInterface] = None
    ) -> RunReport:
        """Phase-kickback variant: one run decides with certainty."""
        _check_boolean_oracle(f)
        rng = self._rng(rng)
        layout = two_register_layout(2, 2)
        state = basis_state(layout, (0, 1))
        state = hadamard_layer(hadamard_layer(state, 0), 1)
        state = apply(oracle_xor_unitary(f, layout), state)
        state = hadamard_layer(state, 0)

        minus_state = hadamard_unitary(2).matrix[:, 1]
        output_unchanged = states_equal_up_to_phase(register_factor(state, 1), minus_state, self.tolerance)
        if not output_unchanged:
            logger.error("Output register left |1'> during the Cleve variant")
        input_state = register_factor(state, 0)
        record = measure(state, 0, rng)

        rays = [coordinate_subspace([label], 2) for label in (0, 1)]
        return RunReport(
            algorithm=AlgorithmEnum.DEUTSCH_CLEVE,
            verdict=VERDICTS[record.outcome],
            conclusive=True,
            trace=[self._summarize(record)],
            geometry=[
                GeometryEntry(
                    name=f"input ray |{label}>",
                    dimension=1,
                    contains_final=contains(ray, input_state, self.tolerance),
                    basis_labels=[label],
                )
                for label, ray in enumerate(rays)
            ],
            seed=rng.seed,
            details={
                "input_probabilities": [float(p) for p in marginal_distribution(state, 0)],
                "output_unchanged": output_unchanged,
            },
        )

    def deutsch_jozsa(
            self,
            f: TruthTable,
            n: int,
            rng: Optional[RandomSourceInterface] = None
    ) -> RunReport:
        """
        n-bit constant-or-balanced test. The input register ends in +-|0...0> for
        a constant f and in the orthocomplement of that ray for a balanced f.
        """
        if f.domain_size != 2 ** n:
            raise DimensionMismatchError("Deutsch-Jozsa oracle domain", 2 ** n, f.domain_size)
        require_promise(f, PromiseTag(kind=PromiseKindEnum.CONSTANT_OR_BALANCED))
        rng = self._rng(rng)
        logger.info(f"Running Deutsch-Jozsa for n={n}")

        state = jozsa_final_state(f, n)
        input_state = register_factor(state, 0)
        record = measure(state, 0, rng)
        zero_ray = coordinate_subspace([0], 2 ** n)
        balanced_space = orthocomplement(zero_ray)

        return RunReport(
            algorithm=AlgorithmEnum.DEUTSCH_JOZSA,
            verdict=VerdictEnum.CONSTANT if record.outcome == 0 else VerdictEnum.BALANCED,
            conclusive=True,
            trace=[self._summarize(record)],
            geometry=[
                GeometryEntry(
                    name="constant ray |0...0>",
                    dimension=zero_ray.dimension,
                    contains_final=contains(zero_ray, input_state, self.tolerance),
                    basis_labels=[0],
                ),
                GeometryEntry(
                    name="orthocomplement of |0...0>",
                    dimension=balanced_space.dimension,
                    contains_final=contains(balanced_space, input_state, self.tolerance),
                ),
            ],
            seed=rng.seed,
            details={"n": n, "zero_amplitude": float(abs(input_state[0]))},
        )

    def deutsch_geometry_report(self, seed: int) -> RunReport:
        """
        The plane picture: P_c, P_b and their meet before the closing Hadamards,
        tested against the uniform state that both planes contain.
        """
        constant_plane, balanced_plane = deutsch_planes()
        final_constant, final_balanced = deutsch_final_planes()
        intersection = meet(constant_plane, balanced_plane)
        uniform = np.full(4, 0.5, dtype=complex)
        named = [
            ("constant plane P_c", constant_plane),
            ("balanced plane P_b", balanced_plane),
            ("P_c meet P_b", intersection),
            ("constant plane after final H", final_constant),
            ("balanced plane after final H", final_balanced),
        ]
        return RunReport(
            algorithm=AlgorithmEnum.GEOMETRY,
            conclusive=True,
            geometry=[
                GeometryEntry(
                    name=name,
                    dimension=sub.dimension,
                    contains_final=contains(sub, uniform, self.tolerance),
                    basis_labels=basis_labels(sub),
                )
                for name, sub in named
            ],
            trials_used=0,
            seed=seed,
            details={
                "family": "deutsch",
                "reference": "uniform state 1/2(|00>+|01>+|10>+|11>)",
                "planes_commute": commutes(constant_plane, balanced_plane, self.tolerance),
                "join_dimension": join(constant_plane, balanced_plane).dimension,
            },
        )
