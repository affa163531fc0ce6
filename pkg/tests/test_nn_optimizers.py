import numpy as np
import pytest

from wildfire_anomaly.nn import (
    OptimizerConfig,
    Param,
    ScheduleConfig,
    clip_gradients,
    make_optimizer,
    schedule_lr,
)


def make_param(value, grad):
    p = Param("w", np.array(value, dtype=float))
    p.grad[...] = grad
    return p


class TestOptimizers:
    def test_sgd_rule(self):
        # lr=0.1, g=1 on w=0 -> w=-0.1
        p = make_param([0.0], [1.0])
        opt = make_optimizer([p], OptimizerConfig(kind="sgd", learning_rate=0.1))
        opt.step(0.1)
        assert p.value[0] == pytest.approx(-0.1, abs=1e-15)

    def test_adam_first_step_equals_lr(self):
        # bias correction makes m_hat / sqrt(v_hat) = 1 for any g on step 1
        lr = 0.01
        p = make_param([0.0], [1.0])
        opt = make_optimizer([p], OptimizerConfig(kind="adam", learning_rate=lr))
        opt.step(lr)
        assert p.value[0] == pytest.approx(-lr, rel=1e-6)

    def test_rmsprop_first_step(self):
        # acc = 0.1*g^2 -> step = lr*g/(sqrt(0.1)*|g| + eps)
        lr = 0.5
        p = make_param([0.0], [2.0])
        opt = make_optimizer([p], OptimizerConfig(kind="rmsprop", learning_rate=lr))
        opt.step(lr)
        expected = -lr * 2.0 / (np.sqrt(0.1 * 4.0) + 1e-8)
        assert p.value[0] == pytest.approx(expected, rel=1e-9)

    @pytest.mark.parametrize("kind", ["sgd", "adam", "rmsprop"])
    def test_zero_gradient_is_fixed_point(self, kind):
        p = make_param([1.5, -2.5], [0.0, 0.0])
        opt = make_optimizer([p], OptimizerConfig(kind=kind, learning_rate=0.1))
        for _ in range(3):
            opt.step(0.1)
        np.testing.assert_array_equal(p.value, [1.5, -2.5])

    @pytest.mark.parametrize("kind", ["sgd", "adam", "rmsprop"])
    def test_vanishing_lr_changes_nothing(self, kind):
        rng = np.random.default_rng(5)
        p = make_param(rng.normal(size=4), rng.normal(size=4))
        before = p.value.copy()
        opt = make_optimizer([p], OptimizerConfig(kind=kind, learning_rate=1.0))
        opt.step(1e-14)
        assert np.max(np.abs(p.value - before)) < 1e-12

    def test_invalid_config_rejected(self):
        with pytest.raises(ValueError):
            OptimizerConfig(kind="adagrad")
        with pytest.raises(ValueError):
            OptimizerConfig(learning_rate=0.0)


def test_clip_gradients_scales_to_norm():
    p = make_param([0.0, 0.0], [3.0, 4.0])
    norm = clip_gradients([p], max_norm=1.0)
    assert norm == pytest.approx(5.0)
    assert np.linalg.norm(p.grad) == pytest.approx(1.0)


def test_clip_gradients_noop_below_norm():
    p = make_param([0.0], [0.5])
    clip_gradients([p], max_norm=5.0)
    assert p.grad[0] == 0.5


class TestSchedules:
    def test_none_returns_base(self):
        sched = ScheduleConfig(kind="none", base_lr=0.07)
        for step in (0, 1, 999):
            assert schedule_lr(sched, step) == 0.07

    def test_cyclical_triangle_vertices(self):
        sched = ScheduleConfig(kind="cyclical", base_lr=1e-4, max_lr=1e-3, step_size=8)
        assert schedule_lr(sched, 0) == pytest.approx(1e-4)
        assert schedule_lr(sched, 8) == pytest.approx(1e-3)
        assert schedule_lr(sched, 16) == pytest.approx(1e-4)
        assert schedule_lr(sched, 4) == pytest.approx((1e-4 + 1e-3) / 2)

    def test_exponential_decay_hand_value(self):
        # 0.1 * 0.5^2 = 0.025
        sched = ScheduleConfig(kind="exponential_decay", base_lr=0.1,
                               decay_rate=0.5, decay_steps=1)
        assert schedule_lr(sched, 2) == pytest.approx(0.025, abs=1e-15)

    def test_inverse_time_decay(self):
        sched = ScheduleConfig(kind="inverse_time_decay", base_lr=1.0,
                               decay_rate=1.0, decay_steps=1)
        assert schedule_lr(sched, 3) == pytest.approx(0.25)

    def test_polynomial_decay_reaches_end_lr(self):
        sched = ScheduleConfig(kind="polynomial_decay", base_lr=1.0,
                               decay_steps=10, end_lr=0.1, power=1.0)
        assert schedule_lr(sched, 0) == pytest.approx(1.0)
        assert schedule_lr(sched, 5) == pytest.approx(0.55)
        assert schedule_lr(sched, 10) == pytest.approx(0.1)
        assert schedule_lr(sched, 50) == pytest.approx(0.1)

    def test_cosine_decay_endpoints(self):
        sched = ScheduleConfig(kind="cosine_decay", base_lr=2.0, decay_steps=100)
        assert schedule_lr(sched, 0) == pytest.approx(2.0)
        assert schedule_lr(sched, 50) == pytest.approx(1.0)
        assert schedule_lr(sched, 100) == pytest.approx(0.0, abs=1e-15)

    def test_negative_step_rejected(self):
        with pytest.raises(ValueError):
            schedule_lr(ScheduleConfig(), -1)

    def test_unknown_kind_rejected(self):
        with pytest.raises(ValueError):
            ScheduleConfig(kind="step_decay")
