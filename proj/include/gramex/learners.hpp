#pragma once
// Interpretable classifiers: a grid-searched CART tree, a one-vs-rest linear
// max-margin classifier, and the most-frequent baseline.

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "gramex/featurize.hpp"

namespace gramex {

enum class Criterion { gini, entropy };
std::string_view criterion_name(Criterion c);

struct TreeConfig {
  std::vector<Criterion> criteria{Criterion::gini, Criterion::entropy};
  std::size_t min_grid_depth = 3;
  std::size_t max_grid_depth = 20;
  std::size_t depth_cap = 10;
  double row_subsample = 0.8;
  double feature_subsample = 0.8;
  std::size_t min_leaf = 5;
  std::uint64_t seed = 0;
  unsigned jobs = 1;
  // Carried for provenance from the boosted-tree setup; a single exact CART
  // tree does not use them.
  double learning_rate = 0.1;
  std::size_t n_estimators = 1;
  std::string objective = "multi:softprob";

  void validate() const;
  std::size_t grid_size() const;
};

enum class ClassWeight { balanced, none };
std::string_view class_weight_name(ClassWeight w);

struct LinearConfig {
  std::vector<double> c_grid{0.001, 0.01};
  std::vector<ClassWeight> weight_grid{ClassWeight::balanced, ClassWeight::none};
  std::size_t epochs = 30;
  std::uint64_t seed = 0;
  unsigned jobs = 1;

  void validate() const;
  std::size_t grid_size() const { return c_grid.size() * weight_grid.size(); }
};

// Row indices into a design matrix.
struct Split {
  std::vector<std::size_t> train;
  std::vector<std::size_t> dev;
  std::vector<std::size_t> test;
};

// Seeded split, stratified by label: each label's rows are shuffled and
// apportioned by `ratios` (train, dev, test), so every part mirrors the class
// proportions. Throws if ratios do not sum to 1.
Split make_split(std::span<const std::string> labels, const std::array<double, 3>& ratios, std::uint64_t seed);

// Sorted distinct labels.
std::vector<std::string> label_set(std::span<const std::string> labels);

class DecisionTree {
 public:
  struct Node {
    long feature = -1;          // split column, -1 for a leaf
    std::size_t present = 0;    // child for rows with the feature
    std::size_t absent = 0;     // child for rows without it
    std::size_t depth = 0;
    std::vector<std::uint32_t> counts;  // per class, training subsample rows routed here
    bool leaf() const { return feature < 0; }
  };

  struct Condition {
    std::size_t feature;
    bool present;
  };

  std::vector<Node> nodes;             // nodes[0] is the root
  std::vector<std::string> classes;
  Criterion criterion = Criterion::gini;
  std::size_t max_depth = 0;           // configured limit
  std::size_t depth() const;           // effective depth (0 for a single leaf)

  std::size_t leaf_for(std::span<const std::uint8_t> row) const;
  const std::string& predict(std::span<const std::uint8_t> row) const;
  std::vector<std::size_t> leaves() const;  // in depth-first order, present branch first
  std::vector<Condition> path_to(std::size_t leaf) const;
  std::size_t majority(std::size_t node) const;  // ties -> lowest class index
};

struct TreeGridCell {
  Criterion criterion;
  std::size_t grid_depth;     // as listed in the grid
  std::size_t max_depth;      // after the cap
  std::size_t effective_depth;
  double dev_accuracy;
};

struct TreeFit {
  DecisionTree tree;
  std::vector<TreeGridCell> grid;
  std::size_t chosen = 0;
};

// Fits a single tree with fixed hyper-parameters on `rows` restricted to
// `features`.
DecisionTree fit_single_tree(const BinaryMatrix& X, std::span<const std::string> y,
                             std::span<const std::size_t> rows, std::span<const std::size_t> features,
                             Criterion criterion, std::size_t max_depth, std::size_t min_leaf);

// Grid search over criteria x depths. Each cell trains on its own seeded row
// and feature subsample; the cell with the best dev accuracy wins, ties going
// to the shallower tree, then to gini, then to grid order. Throws on an empty
// training split.
TreeFit fit_tree(const BinaryMatrix& X, std::span<const std::string> y, const Split& split,
                 const TreeConfig& config);

class LinearModel {
 public:
  std::vector<std::string> classes;
  std::vector<std::vector<float>> weights;  // per class, one per feature
  std::vector<float> bias;
  double c = 0.0;
  ClassWeight class_weight = ClassWeight::none;

  std::vector<float> scores(std::span<const std::uint8_t> row) const;
  std::size_t predict_index(std::span<const std::uint8_t> row) const;
  const std::string& predict(std::span<const std::uint8_t> row) const;
};

struct LinearGridCell {
  double c;
  ClassWeight class_weight;
  double dev_accuracy;
};

struct LinearFit {
  LinearModel model;
  std::vector<LinearGridCell> grid;
  std::size_t chosen = 0;
};

// One-vs-rest hinge loss with an L2 penalty, trained by seeded stochastic
// subgradient descent (Pegasos step sizes, iterate averaging). Per class the
// objective is  lambda/2 |w|^2 + 1/n sum_i s_i max(0, 1 - y_i w.x_i)  with
// lambda = 1/(C n) and s_i the class weight of row i.
LinearModel train_linear(const BinaryMatrix& X, std::span<const std::string> y,
                         std::span<const std::size_t> rows, double c, ClassWeight weight, std::size_t epochs,
                         std::uint64_t seed);

LinearFit fit_linear(const BinaryMatrix& X, std::span<const std::string> y, const Split& split,
                     const LinearConfig& config);

// Majority label; ties go to the lexicographically smallest. Throws on empty input.
std::string most_frequent_baseline(std::span<const std::string> labels);
double accuracy(std::span<const std::string> predictions, std::span<const std::string> gold);

template <typename Model>
std::vector<std::string> predict_rows(const Model& model, const BinaryMatrix& X, std::span<const std::size_t> rows) {
  std::vector<std::string> out;
  out.reserve(rows.size());
  for (std::size_t r : rows) out.push_back(model.predict(X.row(r)));
  return out;
}

std::vector<std::string> gather(std::span<const std::string> labels, std::span<const std::size_t> rows);

struct TrainedModel {
  std::variant<DecisionTree, LinearModel> model;
  FeatureVocabulary vocabulary;
  std::string baseline;
};

}  // namespace gramex
