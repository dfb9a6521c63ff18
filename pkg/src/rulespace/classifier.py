"""Classify feasible rules as de Bruijn or not with a small dense network.

Rules that pass the boundary and complement filters are fully determined
by the free interior bits of their first half, so those bits are the
feature vector (14 bits at mu = 5, 30 at mu = 6).  A feedforward network
(ReLU hidden layers, one sigmoid output) is trained with mini-batch Adam
on the binary cross-entropy loss.  Training is deterministic for a fixed
config: weight init and epoch shuffling draw from separate seeded streams.

Model predictions are only ever a screen; ``verify_predictions`` runs the
exact de Bruijn oracle on every positive, so the confirmed output is
correct no matter how good or bad the model is.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import ArityError, DataError, RangeError, StructureError
from .rulecore import RuleTable, check_mu
from .debruijn import is_debruijn_rule
from .feasibility import boundary_ok, symmetry_ok, enumerate_feasible, sample_feasible

ADAM_BETA1 = 0.9
ADAM_BETA2 = 0.999
ADAM_EPS = 1e-8


def feature_length(mu: int) -> int:
    """Free interior bits in the first half: 2^(mu-1) - 2."""
    check_mu(mu)
    return (1 << (mu - 1)) - 2


def extract_features(rule: RuleTable) -> np.ndarray:
    """First-half bits at positions 2 .. 2^(mu-1) - 1 as a uint8 vector.

    Position 1 is forced to 0 by the boundary filter and position 2^(mu-1)
    is forced to 0 because its complement partner (the last table bit) is
    forced to 1, so the retained bits carry all the information left in a
    structurally valid rule.
    """
    if not (boundary_ok(rule) and symmetry_ok(rule)):
        raise StructureError(
            f"rule {rule.value} (mu={rule.mu}) lacks boundary/complement structure"
        )
    w = 1 << (rule.mu - 1)
    interior = (rule.value >> (w + 1)) & ((1 << (w - 2)) - 1) if w > 2 else 0
    n = max(w - 2, 0)
    return np.fromiter(
        ((interior >> (n - 1 - i)) & 1 for i in range(n)), dtype=np.uint8, count=n
    )


@dataclass
class LabeledDataset:
    """Rules as binary strings plus derived features and oracle labels."""

    mu: int
    rules: list[str]
    features: np.ndarray
    labels: np.ndarray

    def __len__(self) -> int:
        return len(self.rules)

    @property
    def positives(self) -> int:
        return int(self.labels.sum())

    def subset(self, idx: np.ndarray) -> "LabeledDataset":
        return LabeledDataset(
            self.mu,
            [self.rules[i] for i in idx],
            self.features[idx],
            self.labels[idx],
        )


def _dataset_from_pairs(
    mu: int, pairs: Iterable[tuple[RuleTable, int]]
) -> LabeledDataset:
    strings = []
    feats = []
    labels = []
    for rule, label in pairs:
        strings.append(rule.bits)
        feats.append(extract_features(rule))
        labels.append(label)
    features = (
        np.stack(feats) if feats else np.empty((0, feature_length(mu)), np.uint8)
    )
    return LabeledDataset(mu, strings, features, np.array(labels, dtype=np.uint8))


def _dataset_from_rules(mu: int, rules: Iterable[RuleTable]) -> LabeledDataset:
    return _dataset_from_pairs(
        mu, ((rule, 1 if is_debruijn_rule(rule) else 0) for rule in rules)
    )


def build_dataset(
    mu: int,
    *,
    sample: int | None = None,
    balanced: bool = False,
    seed: int = 0,
) -> LabeledDataset:
    """Labeled dataset over the feasible set.

    With ``sample=None`` every feasible rule is enumerated (guarded like
    the enumerator).  Otherwise ``sample`` rules are drawn without
    replacement; ``balanced`` keeps drawing until each class holds half,
    so the labels end up exactly even.
    """
    if sample is None:
        if balanced:
            raise RangeError("balanced sampling needs an explicit sample size")
        return _dataset_from_rules(mu, enumerate_feasible(mu))
    if sample <= 0:
        raise RangeError("sample size must be positive")
    if not balanced:
        return _dataset_from_rules(mu, sample_feasible(mu, seed, sample, unique=True))
    if sample % 2:
        raise RangeError("balanced sampling needs an even sample size")
    per_class = sample // 2
    kept: list[tuple[RuleTable, int]] = []
    counts = [0, 0]
    for rule in sample_feasible(mu, seed, None, unique=True):
        label = 1 if is_debruijn_rule(rule) else 0
        if counts[label] >= per_class:
            continue
        counts[label] += 1
        kept.append((rule, label))
        if counts[0] >= per_class and counts[1] >= per_class:
            break
    else:
        raise DataError(
            f"feasible set for mu={mu} exhausted before both classes "
            f"reached {per_class} rows (got {counts[0]} negatives, {counts[1]} positives)"
        )
    return _dataset_from_pairs(mu, kept)


def split_dataset(
    ds: LabeledDataset, train_fraction: float, seed: int
) -> tuple[LabeledDataset, LabeledDataset]:
    """Seeded shuffle, then prefix/suffix split; train size is floored."""
    if not 0 < train_fraction < 1:
        raise RangeError(f"train fraction must be in (0, 1), got {train_fraction}")
    rng = np.random.default_rng(seed)
    perm = rng.permutation(len(ds))
    n_train = int(len(ds) * train_fraction)
    return ds.subset(perm[:n_train]), ds.subset(perm[n_train:])


@dataclass(frozen=True)
class NetworkConfig:
    """Architecture and training hyperparameters."""

    hidden_layers: tuple[int, ...]
    learning_rate: float = 1e-3
    batch_size: int = 4
    epochs: int = 100
    threshold: float = 0.5
    seed: int = 0

    @classmethod
    def for_mu(cls, mu: int, seed: int = 0) -> "NetworkConfig":
        """Per-memory defaults; mu outside {5, 6} gets the small fallback."""
        if mu == 6:
            return cls(hidden_layers=(64, 64, 8), batch_size=64, seed=seed)
        if mu == 5:
            return cls(hidden_layers=(32, 16), batch_size=4, seed=seed)
        return cls(hidden_layers=(32, 16), batch_size=32, seed=seed)


@dataclass
class Model:
    """Dense network weights; layer i maps widths[i] -> widths[i+1]."""

    mu: int
    weights: list[np.ndarray]
    biases: list[np.ndarray]

    @property
    def widths(self) -> tuple[int, ...]:
        return tuple([self.weights[0].shape[0]] + [w.shape[1] for w in self.weights])


def _init_params(
    widths: Sequence[int], rng: np.random.Generator
) -> tuple[list[np.ndarray], list[np.ndarray]]:
    # uniform init scaled by fan-in (He-style bound sqrt(6/fan_in))
    weights = []
    biases = []
    for fan_in, fan_out in zip(widths[:-1], widths[1:]):
        limit = np.sqrt(6.0 / fan_in)
        weights.append(rng.uniform(-limit, limit, size=(fan_in, fan_out)))
        biases.append(np.zeros(fan_out))
    return weights, biases


def _forward_logits(
    weights: Sequence[np.ndarray], biases: Sequence[np.ndarray], x: np.ndarray
) -> np.ndarray:
    a = x
    for w, b in zip(weights[:-1], biases[:-1]):
        a = np.maximum(a @ w + b, 0.0)
    return (a @ weights[-1] + biases[-1]).ravel()


def _sigmoid(z: np.ndarray) -> np.ndarray:
    out = np.empty_like(z)
    pos = z >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-z[pos]))
    ez = np.exp(z[~pos])
    out[~pos] = ez / (1.0 + ez)
    return out


def _loss_and_grads(
    weights: Sequence[np.ndarray],
    biases: Sequence[np.ndarray],
    x: np.ndarray,
    y: np.ndarray,
) -> tuple[float, list[np.ndarray], list[np.ndarray]]:
    """Mean binary cross-entropy from logits, with gradients via backprop."""
    n = x.shape[0]
    pre: list[np.ndarray] = []
    acts = [x]
    a = x
    for w, b in zip(weights[:-1], biases[:-1]):
        z = a @ w + b
        pre.append(z)
        a = np.maximum(z, 0.0)
        acts.append(a)
    logits = (a @ weights[-1] + biases[-1]).ravel()
    # stable softplus(z) - z*y
    loss = float(np.mean(np.maximum(logits, 0.0) - logits * y + np.log1p(np.exp(-np.abs(logits)))))
    delta = ((_sigmoid(logits) - y) / n)[:, None]
    grads_w = [np.empty(0)] * len(weights)
    grads_b = [np.empty(0)] * len(biases)
    grads_w[-1] = acts[-1].T @ delta
    grads_b[-1] = delta.sum(axis=0)
    for layer in range(len(weights) - 2, -1, -1):
        delta = (delta @ weights[layer + 1].T) * (pre[layer] > 0.0)
        grads_w[layer] = acts[layer].T @ delta
        grads_b[layer] = delta.sum(axis=0)
    return loss, grads_w, grads_b


def train(train_ds: LabeledDataset, cfg: NetworkConfig) -> Model:
    """Mini-batch Adam over ``cfg.epochs`` epochs, deterministic per seed."""
    if len(train_ds) == 0:
        raise DataError("training set is empty")
    x = train_ds.features.astype(np.float64)
    y = train_ds.labels.astype(np.float64)
    widths = (x.shape[1], *cfg.hidden_layers, 1)
    init_rng = np.random.default_rng([cfg.seed, 0])
    shuffle_rng = np.random.default_rng([cfg.seed, 1])
    weights, biases = _init_params(widths, init_rng)
    m_w = [np.zeros_like(w) for w in weights]
    v_w = [np.zeros_like(w) for w in weights]
    m_b = [np.zeros_like(b) for b in biases]
    v_b = [np.zeros_like(b) for b in biases]
    t = 0
    for _ in range(cfg.epochs):
        perm = shuffle_rng.permutation(len(train_ds))
        for lo in range(0, len(perm), cfg.batch_size):
            idx = perm[lo : lo + cfg.batch_size]
            _, gw, gb = _loss_and_grads(weights, biases, x[idx], y[idx])
            t += 1
            c1 = 1.0 - ADAM_BETA1**t
            c2 = 1.0 - ADAM_BETA2**t
            for i in range(len(weights)):
                m_w[i] = ADAM_BETA1 * m_w[i] + (1 - ADAM_BETA1) * gw[i]
                v_w[i] = ADAM_BETA2 * v_w[i] + (1 - ADAM_BETA2) * gw[i] ** 2
                weights[i] -= cfg.learning_rate * (m_w[i] / c1) / (np.sqrt(v_w[i] / c2) + ADAM_EPS)
                m_b[i] = ADAM_BETA1 * m_b[i] + (1 - ADAM_BETA1) * gb[i]
                v_b[i] = ADAM_BETA2 * v_b[i] + (1 - ADAM_BETA2) * gb[i] ** 2
                biases[i] -= cfg.learning_rate * (m_b[i] / c1) / (np.sqrt(v_b[i] / c2) + ADAM_EPS)
    return Model(train_ds.mu, weights, biases)


def predict_proba(model: Model, features: np.ndarray) -> np.ndarray:
    """Sigmoid outputs for a feature matrix."""
    x = np.asarray(features, dtype=np.float64)
    if x.ndim != 2 or x.shape[1] != model.widths[0]:
        raise ArityError(
            f"feature matrix width {x.shape} does not match model input {model.widths[0]}"
        )
    return _sigmoid(_forward_logits(model.weights, model.biases, x))


def predict(
    model: Model, features: np.ndarray, threshold: float = 0.5
) -> tuple[float, int]:
    """(probability, label) for one feature vector; ties go to the positive class."""
    x = np.asarray(features, dtype=np.float64)
    if x.shape != (model.widths[0],):
        raise ArityError(
            f"feature vector shape {x.shape} does not match model input {model.widths[0]}"
        )
    p = float(predict_proba(model, x[None, :])[0])
    return p, int(p >= threshold)


def _ratio(num: int, den: int) -> float | None:
    return num / den if den else None


@dataclass(frozen=True)
class MetricsReport:
    """Confusion-matrix counts and the derived evaluation metrics.

    Metrics whose denominator is zero are None rather than 0.
    """

    tp: int
    fp: int
    tn: int
    fn: int
    accuracy: float | None
    sensitivity: float | None
    specificity: float | None
    precision: float | None
    npv: float | None
    balanced_accuracy: float | None
    detection_rate: float | None
    detection_prevalence: float | None
    true_prevalence: float | None

    @classmethod
    def from_counts(cls, tp: int, fp: int, tn: int, fn: int) -> "MetricsReport":
        total = tp + fp + tn + fn
        sens = _ratio(tp, tp + fn)
        spec = _ratio(tn, tn + fp)
        return cls(
            tp=tp,
            fp=fp,
            tn=tn,
            fn=fn,
            accuracy=_ratio(tp + tn, total),
            sensitivity=sens,
            specificity=spec,
            precision=_ratio(tp, tp + fp),
            npv=_ratio(tn, tn + fn),
            balanced_accuracy=(
                (sens + spec) / 2 if sens is not None and spec is not None else None
            ),
            detection_rate=_ratio(tp, total),
            detection_prevalence=_ratio(tp + fp, total),
            true_prevalence=_ratio(tp + fn, total),
        )

    def as_rows(self) -> list[tuple[str, str]]:
        rows = [
            ("tp", str(self.tp)),
            ("fp", str(self.fp)),
            ("tn", str(self.tn)),
            ("fn", str(self.fn)),
        ]
        for name in (
            "accuracy",
            "sensitivity",
            "specificity",
            "precision",
            "npv",
            "balanced_accuracy",
            "detection_rate",
            "detection_prevalence",
            "true_prevalence",
        ):
            value = getattr(self, name)
            rows.append((name, "NA" if value is None else f"{value:.6f}"))
        return rows


def evaluate(
    model: Model, test: LabeledDataset, threshold: float = 0.5
) -> MetricsReport:
    """Confusion matrix and derived metrics; positive class is de Bruijn."""
    if len(test) == 0:
        raise DataError("test set is empty")
    probs = predict_proba(model, test.features)
    preds = probs >= threshold
    actual = test.labels.astype(bool)
    tp = int(np.sum(preds & actual))
    fp = int(np.sum(preds & ~actual))
    tn = int(np.sum(~preds & ~actual))
    fn = int(np.sum(~preds & actual))
    return MetricsReport.from_counts(tp, fp, tn, fn)


@dataclass
class VerificationReport:
    """Oracle-checked screening outcome over a candidate stream."""

    mu: int
    scanned: int
    predicted_positive: int
    confirmed: list[RuleTable]

    @property
    def confirmed_count(self) -> int:
        return len(self.confirmed)


def verify_predictions(
    model: Model, candidates: Iterable[RuleTable], threshold: float = 0.5
) -> VerificationReport:
    """Screen candidates with the model, then oracle-check every positive.

    Rules without the boundary/complement structure cannot be de Bruijn
    and are counted as negatives without consulting the model.  The
    confirmed list therefore always equals the true de Bruijn subset of
    the model's positives, and of the whole stream when the model has
    perfect sensitivity.
    """
    scanned = 0
    positive = 0
    confirmed: list[RuleTable] = []
    for rule in candidates:
        scanned += 1
        if not (boundary_ok(rule) and symmetry_ok(rule)):
            continue
        features = extract_features(rule)
        _, label = predict(model, features, threshold)
        if not label:
            continue
        positive += 1
        if is_debruijn_rule(rule):
            confirmed.append(rule)
    return VerificationReport(model.mu, scanned, positive, confirmed)


MODEL_FORMAT = "rulespace-model"
MODEL_VERSION = 1


def save_model(model: Model, path: str) -> None:
    """Versioned flat text format; float64 values as exact hex literals."""
    lines = [
        f"{MODEL_FORMAT} {MODEL_VERSION}",
        f"mu {model.mu}",
        "widths " + " ".join(str(w) for w in model.widths),
    ]
    for i, (w, b) in enumerate(zip(model.weights, model.biases)):
        lines.append(f"W{i} {w.shape[0]} {w.shape[1]}")
        for row in w:
            lines.append(" ".join(v.hex() for v in row))
        lines.append(f"b{i} {b.shape[0]}")
        lines.append(" ".join(v.hex() for v in b))
    with open(path, "w", encoding="ascii") as fh:
        fh.write("\n".join(lines) + "\n")


def load_model(path: str) -> Model:
    with open(path, encoding="ascii") as fh:
        lines = [ln.rstrip("\n") for ln in fh]
    try:
        fmt, version = lines[0].split()
        if fmt != MODEL_FORMAT or int(version) != MODEL_VERSION:
            raise DataError(f"unsupported model format: {lines[0]!r}")
        mu = int(lines[1].split()[1])
        widths = [int(t) for t in lines[2].split()[1:]]
        pos = 3
        weights = []
        biases = []
        for i in range(len(widths) - 1):
            tag, rows, cols = lines[pos].split()
            if tag != f"W{i}" or (int(rows), int(cols)) != (widths[i], widths[i + 1]):
                raise DataError(f"bad weight header at line {pos + 1}: {lines[pos]!r}")
            pos += 1
            w = np.array(
                [
                    [float.fromhex(tok) for tok in lines[pos + r].split()]
                    for r in range(int(rows))
                ]
            )
            if w.shape != (int(rows), int(cols)):
                raise DataError(f"weight block W{i} has wrong shape")
            pos += int(rows)
            tag, blen = lines[pos].split()
            if tag != f"b{i}" or int(blen) != widths[i + 1]:
                raise DataError(f"bad bias header at line {pos + 1}: {lines[pos]!r}")
            pos += 1
            b = np.array([float.fromhex(tok) for tok in lines[pos].split()])
            if b.shape != (int(blen),):
                raise DataError(f"bias block b{i} has wrong shape")
            pos += 1
            weights.append(w)
            biases.append(b)
    except (IndexError, ValueError) as exc:
        raise DataError(f"malformed model file {path}: {exc}") from exc
    return Model(mu, weights, biases)


def save_dataset(ds: LabeledDataset, path: str) -> None:
    """CSV with header rule,label; features are re-derived on load."""
    with open(path, "w", encoding="ascii") as fh:
        fh.write("rule,label\n")
        for rule, label in zip(ds.rules, ds.labels):
            fh.write(f"{rule},{int(label)}\n")


def load_dataset(path: str, *, trust: bool = False) -> LabeledDataset:
    """Load a rule,label CSV; labels are re-checked against the oracle.

    ``trust=True`` skips the oracle check (useful for very large files);
    otherwise any label that contradicts is_debruijn_rule raises DataError.
    """
    rules: list[RuleTable] = []
    labels: list[int] = []
    with open(path, encoding="ascii") as fh:
        header = fh.readline().strip()
        while header.startswith("#"):  # config echo lines
            header = fh.readline().strip()
        if header != "rule,label":
            raise DataError(f"expected header 'rule,label', got {header!r}")
        for lineno, raw in enumerate(fh, start=2):
            line = raw.strip()
            if not line:
                continue
            try:
                bits, label_text = line.split(",")
                label = int(label_text)
            except ValueError:
                raise DataError(f"{path}:{lineno}: malformed row {line!r}") from None
            if label not in (0, 1):
                raise DataError(f"{path}:{lineno}: label must be 0 or 1")
            rules.append(RuleTable.from_bits(bits))
            labels.append(label)
    if not rules:
        raise DataError(f"{path}: dataset has no rows")
    mu = rules[0].mu
    if any(r.mu != mu for r in rules):
        raise DataError(f"{path}: mixed rule lengths")
    if not trust:
        for rule, label in zip(rules, labels):
            if label != (1 if is_debruijn_rule(rule) else 0):
                raise DataError(
                    f"{path}: label for rule {rule.bits} contradicts the oracle"
                )
    try:
        features = np.stack([extract_features(r) for r in rules])
    except StructureError as exc:
        raise DataError(f"{path}: {exc}") from exc
    return LabeledDataset(
        mu, [r.bits for r in rules], features, np.array(labels, dtype=np.uint8)
    )
