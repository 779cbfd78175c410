"""Scikit-learn style wrapper around the functional training core."""

from __future__ import annotations

from typing import Iterable, Optional, Sequence, Union

from sklearn.base import BaseEstimator
from sklearn.exceptions import NotFittedError

from .core import Categorical, Feature, Instance
from .endings import DEFAULT_MAX_ENDING_LEN
from .production import ANALOGY_APPLY_CHANGE, ProductionResult, Query, inflect
from .tree import LearnedTree, TrainConfig, train

XItem = Union[Instance, tuple]


def _as_query(x: XItem, all_tags: frozenset[str]) -> Query:
    """Feature-bearing inputs are taken as fully specified (absent tags are
    absent); a bare lemma string means nothing is known, so every declared
    tag becomes unknown and traversal forks at categorical splits."""
    if isinstance(x, Instance):
        return Query(x.lemma, x.features)
    if isinstance(x, str):
        return Query(x, frozenset(), all_tags)
    lemma, features = x
    return Query(lemma, frozenset(features))


class RuleTreeLearner(BaseEstimator):
    """Inflection learner with a fit/predict surface.

    ``X`` is a sequence of (lemma, feature-collection) pairs, bare lemmas,
    or :class:`Instance` objects; ``y`` the inflected forms (omitted when X
    holds Instances).  Frequencies ride along on Instances and default to
    1.0 for pair inputs.  Standard array validation is skipped: inputs are
    strings, as with sklearn's text vectorizers.
    """

    def __init__(
        self,
        max_ending_len: int = DEFAULT_MAX_ENDING_LEN,
        analogy_mode: str = ANALOGY_APPLY_CHANGE,
        use_exceptions: bool = True,
    ):
        self.max_ending_len = max_ending_len
        self.analogy_mode = analogy_mode
        self.use_exceptions = use_exceptions

    def fit(
        self,
        X: Sequence[XItem],
        y: Optional[Sequence[str]] = None,
        declared_features: Optional[Iterable[Feature]] = None,
    ) -> "RuleTreeLearner":
        instances: list[Instance] = []
        if y is None:
            for x in X:
                if not isinstance(x, Instance):
                    raise ValueError("y may be omitted only when X holds Instances")
                instances.append(x)
        else:
            if len(X) != len(y):
                raise ValueError("X and y length mismatch")
            for x, infl in zip(X, y):
                if isinstance(x, Instance):
                    instances.append(
                        Instance(x.lemma, x.features, infl, x.frequency)
                    )
                elif isinstance(x, str):
                    instances.append(Instance(x, frozenset(), infl, 1.0))
                else:
                    lemma, features = x
                    instances.append(Instance(lemma, frozenset(features), infl, 1.0))
        features = list(declared_features) if declared_features is not None else None
        self.tree_: LearnedTree = train(
            instances, features, TrainConfig(max_ending_len=self.max_ending_len)
        )
        return self

    def _check_fitted(self) -> None:
        if not hasattr(self, "tree_"):
            raise NotFittedError(
                "this RuleTreeLearner instance is not fitted yet; call fit first"
            )

    def predict_detailed(self, X: Sequence[XItem]) -> list[ProductionResult]:
        self._check_fitted()
        all_tags = frozenset(self.tree_.declared_tags)
        return [
            inflect(
                self.tree_,
                _as_query(x, all_tags),
                use_exceptions=self.use_exceptions,
                analogy_mode=self.analogy_mode,
            )
            for x in X
        ]

    def predict(self, X: Sequence[XItem]) -> list[str]:
        return [r.inflection for r in self.predict_detailed(X)]

    def score(self, X: Sequence[XItem], y: Sequence[str]) -> float:
        if len(X) != len(y):
            raise ValueError("X and y length mismatch")
        if not X:
            raise ValueError("cannot score an empty set")
        predictions = self.predict(X)
        return sum(p == t for p, t in zip(predictions, y)) / len(y)
