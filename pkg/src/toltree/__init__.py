"""Tolerance-gated recursive rule-tree learning for inflectional morphology.

A pattern covering n items with e exceptions is productive exactly when
e <= n / ln n.  Training grows a decision tree: productive nodes become
rule leaves with their exceptions memorized; unproductive nodes induce
lemma-ending features and split on the most change-consistent one.
Production answers from memorized exceptions first, then the deepest
compatible rule, then analogy to the nearest memorized form.
"""

from .core import (
    Categorical,
    Change,
    EndingSet,
    Instance,
    apply_change,
    derive_change,
)
from .corpus import (
    Dataset,
    FrequencyWeighted,
    LogBinned,
    TopN,
    jitter_frequencies,
    load_dataset,
    sample_frequency_weighted,
    sample_log_binned,
    sample_top_n,
    save_dataset,
)
from .endings import induce_ending_features
from .estimator import RuleTreeLearner
from .production import ProductionResult, Query, inflect
from .serialize import load_tree, save_graph, save_tree, tree_to_graph
from .tolerance import TpVerdict, is_productive, threshold
from .tree import LearnedTree, TrainConfig, best_split, train

__version__ = "0.1.0"

__all__ = [
    "Categorical",
    "Change",
    "Dataset",
    "EndingSet",
    "FrequencyWeighted",
    "Instance",
    "LearnedTree",
    "LogBinned",
    "ProductionResult",
    "Query",
    "RuleTreeLearner",
    "TopN",
    "TpVerdict",
    "TrainConfig",
    "apply_change",
    "best_split",
    "derive_change",
    "induce_ending_features",
    "inflect",
    "is_productive",
    "jitter_frequencies",
    "load_dataset",
    "load_tree",
    "sample_frequency_weighted",
    "sample_log_binned",
    "sample_top_n",
    "save_dataset",
    "save_graph",
    "save_tree",
    "threshold",
    "train",
    "tree_to_graph",
]
