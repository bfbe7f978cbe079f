import logging
import math
from functools import lru_cache
from typing import List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict

from src.exceptions.number_theory import NotCoprimeError, ShorInputError
from src.logic.subspaces import (
    Subspace,
    basis_labels,
    coordinate_subspace,
    includes,
    reduced_support,
)
from src.number_theory.arithmetic import (
    Fraction,
    ShorInputStatusEnum,
    check_modulus,
    gcd,
    is_order_of,
    mod_exp,
    reduce,
    validate_shor_input,
)
from src.oracles.classifiers import brute_force_order
from src.providers.random_provider import RandomSourceInterface
from src.schemas.reports import (
    AlgorithmEnum,
    ASurveyEntry,
    GeometryEntry,
    PeriodSample,
    RunReport,
    ShorFailureEnum,
    ShorRound,
)
from src.services.base import BaseAlgorithmService
from src.simulation.measurement import marginal_distribution, measure
from src.simulation.registers import (
    RegisterLayout,
    is_power_of_two,
    smallest_power_of_two_at_least,
    two_register_layout,
)
from src.simulation.states import StateVector, basis_state, condition_on_register, register_factor
from src.simulation.unitaries import apply, hadamard_layer, oracle_modmul_unitary, qft_unitary


logger = logging.getLogger(__name__)

# reduced_support diagonalizes an s x s density matrix
GEOMETRY_MAX_INPUT_DIMENSION = 1024
# an N=33 final state at s=2048 is 2 MB
FINAL_STATE_CACHE_SIZE = 32


class OffsetState(BaseModel):
    """Post-QFT input state given that the output register holds a^offset mod N."""
    output_label: int
    offset: int
    amplitudes: np.ndarray

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)


def window_mass(
        distribution: np.ndarray,
        s: int,
        r: int,
        radius: float = 1.0
) -> float:
    """Probability within +-radius of the real multiples k*s/r, measured around the circle mod s."""
    y = np.arange(len(distribution), dtype=float)
    spacing = s / r
    offset = y / spacing
    distance = np.abs(offset - np.round(offset)) * spacing
    return float(np.sum(np.asarray(distribution)[distance <= radius + 1e-12]))


def _shor_layout(modulus: int, s: int, exact_output_dim: bool) -> RegisterLayout:
    output_dim = modulus if exact_output_dim else smallest_power_of_two_at_least(modulus)
    return two_register_layout(s, output_dim)


def _oracle_stage_state(a: int, modulus: int, s: int, exact_output_dim: bool) -> StateVector:
    check_modulus(modulus)
    if math.gcd(a, modulus) != 1:
        raise NotCoprimeError(a, modulus)
    if s < modulus:
        raise ShorInputError(modulus, f"input dimension s={s} is smaller than N")
    layout = _shor_layout(modulus, s, exact_output_dim)
    state = basis_state(layout, (0, 0))
    if is_power_of_two(s):
        state = hadamard_layer(state, 0)
    else:
        state = apply(qft_unitary(s), state, 0)
    return apply(oracle_modmul_unitary(a, modulus, layout), state)


@lru_cache(maxsize=FINAL_STATE_CACHE_SIZE)
def _final_state(a: int, modulus: int, s: int, exact_output_dim: bool) -> StateVector:
    logger.debug(f"Building final state for a={a}, N={modulus}, s={s}")
    return apply(qft_unitary(s), _oracle_stage_state(a, modulus, s, exact_output_dim), 0)


class ShorService(BaseAlgorithmService):
    @staticmethod
    def shor_layout(modulus: int, s: int, exact_output_dim: bool = False) -> RegisterLayout:
        return _shor_layout(modulus, s, exact_output_dim)

    def oracle_stage_state(
            self,
            a: int,
            modulus: int,
            s: int,
            exact_output_dim: bool = False
    ) -> StateVector:
        """
        sum_x |x>|a^x mod N> / sqrt(s). The input register is prepared with H when
        s is a power of 2 and with QFT(s)|0> otherwise; both give the uniform state.
        """
        return _oracle_stage_state(a, modulus, s, exact_output_dim)

    def shor_final_state(
            self,
            a: int,
            modulus: int,
            s: int,
            exact_output_dim: bool = False
    ) -> StateVector:
        return _final_state(a, modulus, s, exact_output_dim)

    def post_qft_distribution(
            self,
            a: int,
            modulus: int,
            s: int,
            exact_output_dim: bool = False
    ) -> np.ndarray:
        return marginal_distribution(self.shor_final_state(a, modulus, s, exact_output_dim), 0)

    def shor_period_sample(
            self,
            a: int,
            modulus: int,
            s: int,
            rng: Optional[RandomSourceInterface] = None,
            exact_output_dim: bool = False
    ) -> PeriodSample:
        """Measure the input register after the QFT and cancel c/s to lowest terms."""
        rng = self._rng(rng)
        record = measure(self.shor_final_state(a, modulus, s, exact_output_dim), 0, rng)
        fraction = reduce(Fraction(numerator=record.outcome, denominator=s))
        logger.debug(f"a={a}, N={modulus}: measured c={record.outcome}, c/s = {fraction}")
        return PeriodSample(
            a=a,
            modulus=modulus,
            s=s,
            c=record.outcome,
            probability=record.probability,
            numerator=fraction.numerator,
            candidate_r=fraction.denominator,
            degenerate=record.outcome == 0,
            summary=self._summarize(record),
        )

    @staticmethod
    def shor_evaluate_candidate(
            a: int,
            modulus: int,
            candidate_r: int,
            c: Optional[int] = None,
            round_index: int = 0
    ) -> ShorRound:
        """
        Test a candidate period: a^r = 1 mod N, r even, a^(r/2) != -1 mod N, then
        take gcd(a^(r/2) -+ 1, N).
        """
        fields = {"round_index": round_index, "a": a, "c": c, "candidate_r": candidate_r}
        if c == 0:
            return ShorRound(**fields, failure_reason=ShorFailureEnum.DEGENERATE)
        order_valid = is_order_of(a, candidate_r, modulus)
        fields["order_valid"] = order_valid
        if not order_valid:
            return ShorRound(**fields, failure_reason=ShorFailureEnum.ORDER_INVALID)
        if candidate_r % 2:
            return ShorRound(**fields, failure_reason=ShorFailureEnum.ODD)
        half_power = mod_exp(a, candidate_r // 2, modulus)
        fields.update(even=True, half_power=half_power)
        if half_power == modulus - 1:
            return ShorRound(**fields, minus_one=True, failure_reason=ShorFailureEnum.MINUS_ONE)
        gcd_minus = gcd((half_power - 1) % modulus, modulus)
        gcd_plus = gcd((half_power + 1) % modulus, modulus)
        fields.update(gcd_minus=gcd_minus, gcd_plus=gcd_plus)
        for divisor in (gcd_minus, gcd_plus):
            if 1 < divisor < modulus:
                factors = sorted([divisor, modulus // divisor])
                return ShorRound(**fields, factors=factors, success=True)
        return ShorRound(**fields, failure_reason=ShorFailureEnum.TRIVIAL_FACTORS)

    def shor_factor(
            self,
            modulus: int,
            rng: Optional[RandomSourceInterface] = None,
            max_rounds: Optional[int] = None,
            a: Optional[int] = None,
            s: Optional[int] = None,
            exact_output_dim: bool = False
    ) -> RunReport:
        """
        Candidate-and-test loop: pick a (or use the forced one), find a candidate
        period by measurement, test it, and retry on failure.
        """
        rng = self._rng(rng)
        check = validate_shor_input(modulus)
        if check.status == ShorInputStatusEnum.PRIME:
            raise ShorInputError(modulus, "N is prime")
        if not check.accepted:
            logger.info(f"N={modulus} factored classically ({check.status.value})")
            return RunReport(
                algorithm=AlgorithmEnum.SHOR,
                verdict=sorted([check.factor, modulus // check.factor]),
                conclusive=True,
                trials_used=0,
                seed=rng.seed,
                details={"N": modulus, "classical_shortcut": check.status.value},
            )
        if a is not None and not 1 <= a < modulus:
            raise ShorInputError(modulus, f"a={a} must satisfy 1 <= a < N")
        if s is None:
            s = smallest_power_of_two_at_least(modulus * modulus)
        if max_rounds is None:
            max_rounds = self.settings.SHOR_MAX_ROUNDS
        if s < 1:
            raise ShorInputError(modulus, f"input dimension s={s} must be positive")
        if max_rounds < 1:
            raise ShorInputError(modulus, f"max_rounds={max_rounds} must be positive")
        logger.info(f"Factoring N={modulus} with s={s}, at most {max_rounds} rounds")

        rounds: List[ShorRound] = []
        trace = []
        last_sampled_a = None
        for round_index in range(max_rounds):
            choice = a if a is not None else rng.integers(2, modulus)
            common = math.gcd(choice, modulus)
            if common > 1:
                outcome = ShorRound(
                    round_index=round_index,
                    a=choice,
                    lucky_gcd=True,
                    factors=sorted([common, modulus // common]),
                    success=True,
                )
            else:
                sample = self.shor_period_sample(choice, modulus, s, rng, exact_output_dim)
                trace.append(sample.summary)
                last_sampled_a = choice
                outcome = self.shor_evaluate_candidate(
                    choice, modulus, sample.candidate_r, c=sample.c, round_index=round_index
                )
            logger.debug(f"Round {round_index}: a={choice}, success={outcome.success}, reason={outcome.failure_reason}")
            rounds.append(outcome)
            if outcome.success:
                break

        final_round = rounds[-1]
        geometry = []
        if last_sampled_a is not None and s <= GEOMETRY_MAX_INPUT_DIMENSION:
            geometry = self._geometry_entries(last_sampled_a, modulus, s, exact_output_dim)
        report = RunReport(
            algorithm=AlgorithmEnum.SHOR,
            verdict=final_round.factors if final_round.success else None,
            conclusive=final_round.success,
            trace=trace,
            geometry=geometry,
            trials_used=len(rounds),
            seed=rng.seed,
            rounds=rounds,
            details={
                "N": modulus,
                "s": s,
                "output_dim": self.shor_layout(modulus, s, exact_output_dim).register_dims[1],
            },
        )
        logger.info(f"Factoring N={modulus} finished after {len(rounds)} rounds: {report.verdict}")
        return report

    @staticmethod
    def realizable_orders(modulus: int) -> List[int]:
        return sorted({brute_force_order(b, modulus) for b in range(1, modulus) if math.gcd(b, modulus) == 1})

    def shor_geometry(self, a: int, modulus: int, s: int) -> List[Tuple[int, Subspace]]:
        """V_r = span{|k s / r>} for every realizable order r mod N that divides s."""
        if math.gcd(a, modulus) != 1:
            raise NotCoprimeError(a, modulus)
        subspaces = []
        for r in self.realizable_orders(modulus):
            if s % r:
                logger.info(f"Order r={r} does not divide s={s}; no exact period subspace")
                continue
            subspaces.append((r, coordinate_subspace([k * s // r for k in range(r)], s)))
        return subspaces

    def _geometry_entries(
            self,
            a: int,
            modulus: int,
            s: int,
            exact_output_dim: bool = False
    ) -> List[GeometryEntry]:
        support = reduced_support(self.shor_final_state(a, modulus, s, exact_output_dim), 0)
        entries = [
            GeometryEntry(
                name=f"period subspace V_r={r}",
                dimension=sub.dimension,
                contains_final=includes(sub, support, self.tolerance),
                basis_labels=basis_labels(sub),
            )
            for r, sub in self.shor_geometry(a, modulus, s)
        ]
        entries.append(
            GeometryEntry(
                name="input register support",
                dimension=support.dimension,
                contains_final=True,
                basis_labels=basis_labels(support),
            )
        )
        return entries

    def shor_geometry_report(self, a: int, modulus: int, s: int, seed: int) -> RunReport:
        if s > GEOMETRY_MAX_INPUT_DIMENSION:
            raise ShorInputError(
                modulus, f"geometry needs s <= {GEOMETRY_MAX_INPUT_DIMENSION}, got s={s}"
            )
        subspaces = self.shor_geometry(a, modulus, s)
        nesting = [
            [r_small, r_large]
            for r_small, small in subspaces
            for r_large, large in subspaces
            if r_small < r_large and includes(large, small, self.tolerance)
        ]
        return RunReport(
            algorithm=AlgorithmEnum.GEOMETRY,
            conclusive=True,
            geometry=self._geometry_entries(a, modulus, s),
            trials_used=0,
            seed=seed,
            details={
                "family": "shor",
                "a": a,
                "N": modulus,
                "s": s,
                "order": brute_force_order(a, modulus),
                "nested_pairs": nesting,
                "excluded_orders": [r for r in self.realizable_orders(modulus) if s % r],
            },
        )

    def shor_offset_states(
            self,
            a: int,
            modulus: int,
            s: int,
            exact_output_dim: bool = False
    ) -> List[OffsetState]:
        """Conditional post-QFT input states, one per output value a^m, m = 0..r-1."""
        final = self.shor_final_state(a, modulus, s, exact_output_dim)
        states = []
        for offset in range(brute_force_order(a, modulus)):
            label = pow(a, offset, modulus)
            conditioned = condition_on_register(final, 1, label)
            states.append(
                OffsetState(
                    output_label=label,
                    offset=offset,
                    amplitudes=register_factor(conditioned, 0),
                )
            )
        return states

    def shor_a_survey(self, modulus: int) -> List[ASurveyEntry]:
        """Order and usability for every a coprime to N."""
        entries = []
        for a in range(2, modulus):
            if math.gcd(a, modulus) != 1:
                continue
            order = brute_force_order(a, modulus)
            outcome = self.shor_evaluate_candidate(a, modulus, order)
            entries.append(
                ASurveyEntry(
                    a=a,
                    order=order,
                    even=outcome.even,
                    minus_one=outcome.minus_one,
                    usable=outcome.success,
                    factors=outcome.factors,
                )
            )
        return entries
