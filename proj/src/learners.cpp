#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "gramex/kernels.hpp"
#include "gramex/learners.hpp"
#include "gramex/util.hpp"

namespace gramex {

std::string_view criterion_name(Criterion c) { return c == Criterion::gini ? "gini" : "entropy"; }

std::string_view class_weight_name(ClassWeight w) { return w == ClassWeight::balanced ? "balanced" : "none"; }

void TreeConfig::validate() const {
  if (criteria.empty()) throw Error("tree config: empty criterion grid");
  if (min_grid_depth < 1 || max_grid_depth < min_grid_depth) throw Error("tree config: bad depth grid");
  if (depth_cap < 1) throw Error("tree config: depth cap must be >= 1");
  if (!(row_subsample > 0.0 && row_subsample <= 1.0)) throw Error("tree config: row_subsample must be in (0,1]");
  if (!(feature_subsample > 0.0 && feature_subsample <= 1.0)) {
    throw Error("tree config: feature_subsample must be in (0,1]");
  }
}

std::size_t TreeConfig::grid_size() const { return criteria.size() * (max_grid_depth - min_grid_depth + 1); }

void LinearConfig::validate() const {
  if (c_grid.empty() || weight_grid.empty()) throw Error("linear config: empty grid");
  for (double c : c_grid) {
    if (!(c > 0.0)) throw Error("linear config: C must be > 0");
  }
  if (epochs == 0) throw Error("linear config: epochs must be >= 1");
}

std::vector<std::string> label_set(std::span<const std::string> labels) {
  std::vector<std::string> out(labels.begin(), labels.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Split make_split(std::span<const std::string> labels, const std::array<double, 3>& ratios, std::uint64_t seed) {
  for (double r : ratios) {
    if (r < 0.0) throw Error("split ratios must be non-negative");
  }
  if (std::abs(ratios[0] + ratios[1] + ratios[2] - 1.0) > 1e-9) throw Error("split ratios must sum to 1");
  std::map<std::string, std::vector<std::size_t>> by_label;
  for (std::size_t i = 0; i < labels.size(); ++i) by_label[labels[i]].push_back(i);
  Split split;
  Rng rng(seed);
  for (auto& [label, rows] : by_label) {
    rng.shuffle(rows);
    const double n = static_cast<double>(rows.size());
    auto n_train = static_cast<std::size_t>(std::floor(n * ratios[0] + 0.5));
    auto n_train_dev = static_cast<std::size_t>(std::floor(n * (ratios[0] + ratios[1]) + 0.5));
    n_train_dev = std::min(n_train_dev, rows.size());
    split.train.insert(split.train.end(), rows.begin(), rows.begin() + n_train);
    split.dev.insert(split.dev.end(), rows.begin() + n_train, rows.begin() + n_train_dev);
    split.test.insert(split.test.end(), rows.begin() + n_train_dev, rows.end());
  }
  std::sort(split.train.begin(), split.train.end());
  std::sort(split.dev.begin(), split.dev.end());
  std::sort(split.test.begin(), split.test.end());
  return split;
}

std::vector<std::string> gather(std::span<const std::string> labels, std::span<const std::size_t> rows) {
  std::vector<std::string> out;
  out.reserve(rows.size());
  for (std::size_t r : rows) out.push_back(labels[r]);
  return out;
}

std::string most_frequent_baseline(std::span<const std::string> labels) {
  if (labels.empty()) throw Error("most_frequent_baseline: no labels");
  std::map<std::string, std::size_t> counts;
  for (const auto& l : labels) ++counts[l];
  auto best = counts.begin();
  for (auto it = counts.begin(); it != counts.end(); ++it) {
    if (it->second > best->second) best = it;
  }
  return best->first;
}

double accuracy(std::span<const std::string> predictions, std::span<const std::string> gold) {
  if (predictions.size() != gold.size()) throw Error("accuracy: size mismatch");
  if (gold.empty()) return 0.0;
  std::size_t correct = 0;
  for (std::size_t i = 0; i < gold.size(); ++i) correct += predictions[i] == gold[i];
  return static_cast<double>(correct) / static_cast<double>(gold.size());
}

// ---- decision tree --------------------------------------------------------

std::size_t DecisionTree::depth() const {
  std::size_t d = 0;
  for (const auto& n : nodes) d = std::max(d, n.depth);
  return d;
}

std::size_t DecisionTree::leaf_for(std::span<const std::uint8_t> row) const {
  std::size_t cur = 0;
  while (!nodes[cur].leaf()) {
    const Node& n = nodes[cur];
    cur = row[static_cast<std::size_t>(n.feature)] ? n.present : n.absent;
  }
  return cur;
}

std::size_t DecisionTree::majority(std::size_t node) const {
  const auto& c = nodes.at(node).counts;
  return static_cast<std::size_t>(std::max_element(c.begin(), c.end()) - c.begin());
}

const std::string& DecisionTree::predict(std::span<const std::uint8_t> row) const {
  return classes[majority(leaf_for(row))];
}

std::vector<std::size_t> DecisionTree::leaves() const {
  std::vector<std::size_t> out;
  if (nodes.empty()) return out;
  std::vector<std::size_t> stack{0};
  while (!stack.empty()) {
    std::size_t cur = stack.back();
    stack.pop_back();
    if (nodes[cur].leaf()) {
      out.push_back(cur);
    } else {
      stack.push_back(nodes[cur].absent);
      stack.push_back(nodes[cur].present);
    }
  }
  return out;
}

std::vector<DecisionTree::Condition> DecisionTree::path_to(std::size_t leaf) const {
  // Parent links are implicit; walk from the root using a DFS that records the path.
  std::vector<Condition> path;
  std::function<bool(std::size_t)> walk = [&](std::size_t cur) {
    if (cur == leaf) return true;
    const Node& n = nodes[cur];
    if (n.leaf()) return false;
    path.push_back({static_cast<std::size_t>(n.feature), true});
    if (walk(n.present)) return true;
    path.back().present = false;
    if (walk(n.absent)) return true;
    path.pop_back();
    return false;
  };
  if (!walk(0)) throw Error("path_to: node is not in the tree");
  return path;
}

namespace {

double impurity(std::span<const double> counts, double total, Criterion criterion) {
  if (total <= 0.0) return 0.0;
  double acc = 0.0;
  if (criterion == Criterion::gini) {
    for (double c : counts) {
      double p = c / total;
      acc += p * p;
    }
    return 1.0 - acc;
  }
  for (double c : counts) {
    if (c > 0.0) {
      double p = c / total;
      acc -= p * std::log2(p);
    }
  }
  return acc;
}

struct TreeBuilder {
  const BinaryMatrix& X;
  const std::vector<std::size_t>& y;  // class indices per row
  std::size_t n_classes;
  std::span<const std::size_t> features;
  Criterion criterion;
  std::size_t max_depth;
  std::size_t min_leaf;
  DecisionTree& tree;

  std::size_t build(std::vector<std::size_t> rows, std::size_t depth) {
    const std::size_t id = tree.nodes.size();
    tree.nodes.emplace_back();
    {
      auto& node = tree.nodes[id];
      node.depth = depth;
      node.counts.assign(n_classes, 0);
      for (std::size_t r : rows) ++node.counts[y[r]];
    }
    const std::vector<std::uint32_t> counts = tree.nodes[id].counts;
    const std::size_t n = rows.size();
    const std::size_t nonzero = static_cast<std::size_t>(
        std::count_if(counts.begin(), counts.end(), [](std::uint32_t c) { return c > 0; }));
    if (nonzero <= 1 || depth >= max_depth || n < 2 * min_leaf) return id;

    // present[c][f] = rows of class c at this node having feature f.
    const std::size_t cols = X.cols();
    std::vector<std::vector<std::uint32_t>> present(n_classes, std::vector<std::uint32_t>(cols, 0));
    for (std::size_t r : rows) kernels::accumulate_u8(X.row(r), present[y[r]]);

    std::vector<double> parent(counts.begin(), counts.end());
    const double parent_impurity = impurity(parent, static_cast<double>(n), criterion);
    long best = -1;
    double best_gain = -1.0;  // zero-gain splits are allowed (XOR-like interactions)
    std::vector<double> pc(n_classes), ac(n_classes);
    for (std::size_t f : features) {
      double np = 0.0;
      for (std::size_t c = 0; c < n_classes; ++c) {
        pc[c] = present[c][f];
        ac[c] = counts[c] - pc[c];
        np += pc[c];
      }
      const double na = static_cast<double>(n) - np;
      if (np < static_cast<double>(min_leaf) || na < static_cast<double>(min_leaf)) continue;
      const double child = (np * impurity(pc, np, criterion) + na * impurity(ac, na, criterion)) / n;
      const double gain = parent_impurity - child;
      if (gain > best_gain + 1e-12) {
        best_gain = gain;
        best = static_cast<long>(f);
      }
    }
    if (best < 0) return id;

    std::vector<std::size_t> with, without;
    for (std::size_t r : rows) (X(r, static_cast<std::size_t>(best)) ? with : without).push_back(r);
    rows.clear();
    rows.shrink_to_fit();
    const std::size_t p = build(std::move(with), depth + 1);
    const std::size_t a = build(std::move(without), depth + 1);
    auto& node = tree.nodes[id];
    node.feature = best;
    node.present = p;
    node.absent = a;
    return id;
  }
};

std::vector<std::size_t> class_indices(std::span<const std::string> y, const std::vector<std::string>& classes) {
  std::vector<std::size_t> out(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) {
    out[i] = static_cast<std::size_t>(std::lower_bound(classes.begin(), classes.end(), y[i]) - classes.begin());
  }
  return out;
}

std::vector<std::size_t> subsample(std::vector<std::size_t> pool, double fraction, Rng& rng) {
  if (fraction >= 1.0 || pool.empty()) return pool;
  const auto keep = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(pool.size()) - 1e-9)));
  rng.shuffle(pool);
  pool.resize(keep);
  std::sort(pool.begin(), pool.end());
  return pool;
}

std::size_t count_correct(std::span<const std::string> predictions, std::span<const std::string> gold) {
  std::size_t c = 0;
  for (std::size_t i = 0; i < gold.size(); ++i) c += predictions[i] == gold[i];
  return c;
}

}  // namespace

DecisionTree fit_single_tree(const BinaryMatrix& X, std::span<const std::string> y,
                             std::span<const std::size_t> rows, std::span<const std::size_t> features,
                             Criterion criterion, std::size_t max_depth, std::size_t min_leaf) {
  if (rows.empty()) throw Error("fit_tree: no training rows");
  DecisionTree tree;
  std::vector<std::string> row_labels = gather(y, rows);
  tree.classes = label_set(row_labels);
  tree.criterion = criterion;
  tree.max_depth = max_depth;
  const auto yi = class_indices(y, tree.classes);
  // Rows whose label is absent from `rows` never reach the builder.
  TreeBuilder builder{X, yi, tree.classes.size(), features, criterion, max_depth, std::max<std::size_t>(1, min_leaf), tree};
  builder.build(std::vector<std::size_t>(rows.begin(), rows.end()), 0);
  return tree;
}

TreeFit fit_tree(const BinaryMatrix& X, std::span<const std::string> y, const Split& split,
                 const TreeConfig& config) {
  config.validate();
  if (split.train.empty()) throw Error("fit_tree: empty training data");
  const std::span<const std::size_t> dev = split.dev.empty() ? std::span<const std::size_t>(split.train)
                                                             : std::span<const std::size_t>(split.dev);
  const auto dev_gold = gather(y, dev);
  std::vector<std::size_t> all_features(X.cols());
  std::iota(all_features.begin(), all_features.end(), 0);

  struct Cell {
    Criterion criterion;
    std::size_t grid_depth;
  };
  std::vector<Cell> cells;
  for (Criterion c : config.criteria) {
    for (std::size_t d = config.min_grid_depth; d <= config.max_grid_depth; ++d) cells.push_back({c, d});
  }

  std::vector<DecisionTree> trees(cells.size());
  std::vector<std::size_t> correct(cells.size());
  parallel_for(cells.size(), config.jobs, [&](std::size_t i) {
    Rng rng(derive_seed(config.seed, i));
    auto rows = subsample(split.train, config.row_subsample, rng);
    auto feats = subsample(all_features, config.feature_subsample, rng);
    const std::size_t depth = std::min(cells[i].grid_depth, config.depth_cap);
    trees[i] = fit_single_tree(X, y, rows, feats, cells[i].criterion, depth, config.min_leaf);
    correct[i] = count_correct(predict_rows(trees[i], X, dev), dev_gold);
  });

  TreeFit fit;
  std::size_t best = 0;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const std::size_t eff = trees[i].depth();
    fit.grid.push_back({cells[i].criterion, cells[i].grid_depth, std::min(cells[i].grid_depth, config.depth_cap),
                        eff, dev.empty() ? 0.0 : static_cast<double>(correct[i]) / dev.size()});
    if (i == 0) continue;
    // Cells are ordered gini-first then by depth, so "strictly better" keeps
    // the earlier cell on remaining ties.
    if (correct[i] > correct[best] || (correct[i] == correct[best] && eff < trees[best].depth())) best = i;
  }
  fit.chosen = best;
  fit.tree = std::move(trees[best]);
  return fit;
}

// ---- linear ---------------------------------------------------------------

std::vector<float> LinearModel::scores(std::span<const std::uint8_t> row) const {
  std::vector<float> x(row.begin(), row.end());
  std::vector<float> out(classes.size());
  for (std::size_t c = 0; c < classes.size(); ++c) out[c] = kernels::dot(weights[c], x) + bias[c];
  return out;
}

std::size_t LinearModel::predict_index(std::span<const std::uint8_t> row) const {
  if (classes.size() == 1) return 0;
  auto s = scores(row);
  return static_cast<std::size_t>(std::max_element(s.begin(), s.end()) - s.begin());
}

const std::string& LinearModel::predict(std::span<const std::uint8_t> row) const {
  return classes[predict_index(row)];
}

LinearModel train_linear(const BinaryMatrix& X, std::span<const std::string> y, std::span<const std::size_t> rows,
                         double c, ClassWeight weight, std::size_t epochs, std::uint64_t seed) {
  if (rows.empty()) throw Error("fit_linear: empty training data");
  LinearModel model;
  model.c = c;
  model.class_weight = weight;
  const auto row_labels = gather(y, rows);
  model.classes = label_set(row_labels);
  const std::size_t k = model.classes.size();
  const std::size_t d = X.cols();
  model.weights.assign(k, std::vector<float>(d, 0.0f));
  model.bias.assign(k, 0.0f);
  if (k == 1) return model;

  const std::size_t n = rows.size();
  const auto yi = class_indices(row_labels, model.classes);
  std::vector<double> class_weight(k, 1.0);
  if (weight == ClassWeight::balanced) {
    std::vector<std::size_t> freq(k, 0);
    for (auto v : yi) ++freq[v];
    for (std::size_t j = 0; j < k; ++j) class_weight[j] = static_cast<double>(n) / (k * freq[j]);
  }

  // Rows as floats with a trailing constant column carrying the bias.
  const std::size_t dim = d + 1;
  std::vector<float> data(n * dim);
  for (std::size_t i = 0; i < n; ++i) {
    auto src = X.row(rows[i]);
    std::copy(src.begin(), src.end(), data.begin() + i * dim);
    data[i * dim + d] = 1.0f;
  }

  const double lambda = 1.0 / (c * static_cast<double>(n));
  const std::size_t total_steps = epochs * n;
  const std::size_t average_from = total_steps / 2;

  for (std::size_t cls = 0; cls < k; ++cls) {
    Rng rng(derive_seed(seed, cls));
    std::vector<float> w(dim, 0.0f), avg(dim, 0.0f);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::size_t t = 0;
    std::size_t averaged = 0;
    for (std::size_t e = 0; e < epochs; ++e) {
      rng.shuffle(order);
      for (std::size_t i : order) {
        ++t;
        const double eta = 1.0 / (lambda * static_cast<double>(t));
        std::span<const float> x(data.data() + i * dim, dim);
        const float target = yi[i] == cls ? 1.0f : -1.0f;
        const float margin = target * kernels::dot(w, x);
        kernels::scale(static_cast<float>(1.0 - eta * lambda), w);
        if (margin < 1.0f) {
          kernels::axpy(static_cast<float>(eta * class_weight[yi[i]]) * target, x, w);
        }
        if (t > average_from) {
          kernels::axpy(1.0f, w, avg);
          ++averaged;
        }
      }
    }
    kernels::scale(1.0f / static_cast<float>(std::max<std::size_t>(1, averaged)), avg);
    model.weights[cls].assign(avg.begin(), avg.begin() + static_cast<long>(d));
    model.bias[cls] = avg[d];
  }
  return model;
}

LinearFit fit_linear(const BinaryMatrix& X, std::span<const std::string> y, const Split& split,
                     const LinearConfig& config) {
  config.validate();
  if (split.train.empty()) throw Error("fit_linear: empty training data");
  const std::span<const std::size_t> dev = split.dev.empty() ? std::span<const std::size_t>(split.train)
                                                             : std::span<const std::size_t>(split.dev);
  const auto dev_gold = gather(y, dev);

  struct Cell {
    double c;
    ClassWeight weight;
  };
  std::vector<Cell> cells;
  for (double c : config.c_grid) {
    for (ClassWeight w : config.weight_grid) cells.push_back({c, w});
  }
  std::vector<LinearModel> models(cells.size());
  std::vector<std::size_t> correct(cells.size());
  parallel_for(cells.size(), config.jobs, [&](std::size_t i) {
    models[i] = train_linear(X, y, split.train, cells[i].c, cells[i].weight, config.epochs,
                             derive_seed(config.seed, i));
    correct[i] = count_correct(predict_rows(models[i], X, dev), dev_gold);
  });

  LinearFit fit;
  std::size_t best = 0;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    fit.grid.push_back({cells[i].c, cells[i].weight, static_cast<double>(correct[i]) / dev.size()});
    if (correct[i] > correct[best]) best = i;
  }
  fit.chosen = best;
  fit.model = std::move(models[best]);
  return fit;
}

}  // namespace gramex
