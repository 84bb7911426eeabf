"""Unit tests for sutrack.motion.ctrv."""
from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from sutrack.geometry.box import BoundingBox
from sutrack.motion.ctrv import (
    AREA,
    ASPECT,
    HEADING,
    MotionState,
    box_measurement,
    clamp_state,
    ctrv_transition,
    ctrv_transition_array,
    measure,
    wrap_angle,
)

# ---------------------------------------------------------------------------
# Transition
# ---------------------------------------------------------------------------


class TestCtrvTransition:
    def test_straight_line(self) -> None:
        state = ctrv_transition(MotionState(0.0, 0.0, 5.0, 0.0, 0.0, 100.0, 0.0, 1.0), 1.0)
        assert (state.cx, state.cy) == (5.0, 0.0)
        assert state.heading == 0.0

    def test_quarter_turn_arc(self) -> None:
        state = MotionState(0.0, 0.0, 1.0, 0.0, math.pi / 2.0, 100.0, 0.0, 1.0)
        moved = ctrv_transition(state, 1.0)
        assert moved.cx == pytest.approx(2.0 / math.pi)
        assert moved.cy == pytest.approx(2.0 / math.pi)
        assert moved.heading == pytest.approx(math.pi / 2.0)

    def test_tiny_turn_rate_uses_straight_limit(self) -> None:
        state = MotionState(0.0, 0.0, 2.0, math.pi / 2.0, 1e-9, 100.0, 0.0, 1.0)
        moved = ctrv_transition(state, 3.0)
        assert moved.cx == pytest.approx(0.0, abs=1e-12)
        assert moved.cy == pytest.approx(6.0)

    def test_area_integrates_rate(self) -> None:
        state = MotionState(0.0, 0.0, 0.0, 0.0, 0.0, 100.0, 2.5, 1.0)
        assert ctrv_transition(state, 4.0).area == pytest.approx(110.0)

    def test_shape_terms_untouched(self) -> None:
        state = MotionState(1.0, 2.0, 3.0, 0.4, 0.2, 50.0, 0.0, 2.0)
        moved = ctrv_transition(state, 1.0)
        assert (moved.speed, moved.turn_rate, moved.aspect) == (3.0, 0.2, 2.0)

    @pytest.mark.parametrize("dt", [0.0, -1.0])
    def test_non_positive_dt_rejected(self, dt: float) -> None:
        with pytest.raises(ValueError, match="dt must be positive"):
            ctrv_transition(MotionState(0, 0, 1, 0, 0, 1, 0, 1), dt)

    def test_vectorized_matches_scalar(self) -> None:
        states = np.array(
            [
                [0.0, 0.0, 5.0, 0.0, 0.0, 100.0, 0.0, 1.0],
                [0.0, 0.0, 1.0, 0.0, math.pi / 2.0, 100.0, 0.0, 1.0],
            ]
        )
        batch = ctrv_transition_array(states, 1.0)
        for row, expected in zip(batch, states):
            single = ctrv_transition(MotionState.from_vector(expected), 1.0)
            np.testing.assert_allclose(row, single.to_vector())

    @given(
        st.floats(min_value=0.0, max_value=20.0),
        st.floats(min_value=-math.pi, max_value=math.pi),
        st.floats(min_value=-1.0, max_value=1.0),
    )
    def test_heading_stays_wrapped(self, speed: float, heading: float, turn: float) -> None:
        moved = ctrv_transition(MotionState(0.0, 0.0, speed, heading, turn, 1.0, 0.0, 1.0), 7.0)
        assert -math.pi - 1e-12 <= moved.heading <= math.pi + 1e-12

    @given(
        st.floats(min_value=0.1, max_value=20.0),
        st.floats(min_value=-math.pi, max_value=math.pi),
        st.floats(min_value=0.01, max_value=1.0),
    )
    def test_arc_preserves_distance_bound(self, speed: float, heading: float, turn: float) -> None:
        moved = ctrv_transition(MotionState(0.0, 0.0, speed, heading, turn, 1.0, 0.0, 1.0), 1.0)
        # a chord never exceeds the arc length
        assert math.hypot(moved.cx, moved.cy) <= speed + 1e-9


# ---------------------------------------------------------------------------
# Measurement and helpers
# ---------------------------------------------------------------------------


class TestMeasurement:
    def test_measure_selects_box_terms(self) -> None:
        state = MotionState(5.0, 10.0, 3.0, 0.1, 0.0, 200.0, 1.0, 0.5)
        np.testing.assert_array_equal(measure(state), [5.0, 10.0, 200.0, 0.5])

    def test_box_measurement(self) -> None:
        box = BoundingBox(0.0, 0.0, 10.0, 20.0)
        np.testing.assert_array_equal(box_measurement(box), [5.0, 10.0, 200.0, 0.5])

    def test_state_from_box(self) -> None:
        state = MotionState.from_box(BoundingBox(0.0, 0.0, 10.0, 20.0))
        assert state == MotionState(5.0, 10.0, 0.0, 0.0, 0.0, 200.0, 0.0, 0.5)


class TestHelpers:
    @pytest.mark.parametrize(
        ("angle", "expected"),
        [(0.0, 0.0), (math.pi, math.pi), (-math.pi, math.pi), (2.5 * math.pi, 0.5 * math.pi),
         (1.5 * math.pi, -0.5 * math.pi)],
    )
    def test_wrap_angle(self, angle: float, expected: float) -> None:
        assert float(wrap_angle(angle)) == pytest.approx(expected)

    def test_clamp_state(self) -> None:
        state = np.array([0.0, 0.0, 1.0, 4.0, 0.0, -5.0, 0.0, 100.0])
        clamped = clamp_state(state, min_area=1.0, min_aspect=0.05, max_aspect=20.0)
        assert clamped[AREA] == 1.0
        assert clamped[ASPECT] == 20.0
        assert clamped[HEADING] == pytest.approx(4.0 - 2.0 * math.pi)
        assert state[AREA] == -5.0
