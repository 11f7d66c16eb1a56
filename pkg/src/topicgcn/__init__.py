"""Topic-conditioned document graphs and a multi-graph GCN classifier.

The pipeline: clean and tokenize labeled short texts, fit LDA by
collapsed Gibbs sampling for several cluster counts, keep each topic's
strongest words as a sub-dictionary, re-embed all documents per topic
with tf-idf, link each document to its most similar peers, and train a
two-layer GCN per graph whose concatenated embeddings feed one softmax
head.  Training is transductive: every document propagates, only train
rows contribute loss.
"""

from .corpus import (
    DROP,
    LABEL_PROFILES,
    Corpus,
    Dictionary,
    Document,
    RawPost,
    build_dictionary,
    builtin_stopwords,
    load_posts,
    load_stopwords,
    preprocess,
    tokenize_text,
)
from .errors import ConfigError, InputError, StageError
from .experiment import (
    ExperimentConfig,
    RunResult,
    config_from_ini,
    load_checkpoint,
    run_experiment,
    sweep_clusters,
    sweep_topk,
)
from .gcn import (
    AdamState,
    ForwardCache,
    GcnLayerParams,
    MultiGraphGcn,
    adam_step,
    forward,
    gradient_check,
    init_adam_state,
    init_model,
    loss_and_grad,
    predict_proba,
    softmax,
)
from .graphs import (
    EdgeList,
    TopicGraph,
    build_topic_features,
    build_topic_graph,
    build_topk_edges,
    normalize_adjacency,
)
from .lda import LdaConfig, TopicModel, fit_lda, gibbs_conditional, topic_word_weights
from .metrics import Metrics, auc_pairwise_oracle, auc_rank, evaluate
from .stemmer import stem
from .tfidf import TfidfModel, cosine_similarity, fit_tfidf, transform
from .topic_words import TopicDictionary, rank_topic_words, select_topic_words
from .training import (
    SplitMasks,
    TrainConfig,
    TrainHistory,
    stratified_split,
    train,
)

__version__ = "0.1.0"
