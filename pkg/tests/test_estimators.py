import numpy as np
import pytest
from sklearn.base import clone

from conftest import T3, uniform_box
from udgcolor.estimators import (DegreeSplitColoring, FractionalStripeColoring,
                                 GreedyListColoring, StripeColoring, UnitDiskAdjacency,
                                 check_points)

ESTIMATORS = [StripeColoring, DegreeSplitColoring, GreedyListColoring]


@pytest.mark.parametrize("cls", ESTIMATORS)
def test_fit_sets_attributes(cls):
    X = uniform_box(150, 6, 6, 0)
    est = cls().fit(X)
    assert est.labels_.shape == (150,)
    assert est.validation_.passed
    assert est.n_colors_ <= est.palette_size_
    assert est.n_rounds_ == est.trace_.rounds_executed


@pytest.mark.parametrize("cls", ESTIMATORS)
def test_fit_predict_and_clone(cls):
    X = np.array(T3)
    est = cls(seed=3)
    labels = est.fit_predict(X)
    assert np.array_equal(labels, clone(est).fit(X).labels_)
    assert est.get_params()["seed"] == 3


def test_bounds():
    X = uniform_box(200, 6, 6, 1)
    s = StripeColoring().fit(X)
    assert s.bound() == 4 * s.omega_
    d = DegreeSplitColoring().fit(X)
    assert d.bound() == -(-568 * d.omega_ // 100)


def test_explicit_omega():
    est = StripeColoring(omega=5).fit(np.array(T3))
    assert est.omega_ == 5 and est.palette_size_ == 20


@pytest.mark.parametrize("omega", [0, -1, 2.5, "big", True])
def test_bad_omega(omega):
    with pytest.raises(ValueError):
        StripeColoring(omega=omega).fit(np.array(T3))


@pytest.mark.parametrize("X", [np.zeros((3, 3)), np.zeros((0, 2)), [[0, np.inf]], [[0, np.nan]]])
def test_input_validation(X):
    with pytest.raises(ValueError):
        check_points(X)


def test_fractional_estimator():
    X = uniform_box(60, 5, 5, 2)
    est = FractionalStripeColoring(r=20, eps=0.25)
    sets = est.fit_predict(X)
    assert sets.shape == (60, est.q_)
    assert est.validation_.passed
    assert est.ratio_ == pytest.approx(est.p_ / est.q_)


def test_adjacency_transformer():
    A = UnitDiskAdjacency().fit_transform(np.array(T3))
    assert A.toarray().tolist() == [[0, 1, 1], [1, 0, 1], [1, 1, 0]]


def test_unfitted_bound_raises():
    from sklearn.exceptions import NotFittedError
    with pytest.raises(NotFittedError):
        StripeColoring().bound()
