#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "umt/errors.hpp"
#include "umt/tree.hpp"

namespace umt {

/// Symmetric integer matrix indexed by species labels, zero diagonal.
class IntMatrix {
 public:
  IntMatrix() = default;
  explicit IntMatrix(std::vector<std::string> labels)
      : labels_(std::move(labels)), data_(labels_.size() * labels_.size(), 0) {}

  std::size_t size() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  int operator()(std::size_t i, std::size_t j) const { return data_[i * size() + j]; }
  /// Writes both (i, j) and (j, i).
  void set(std::size_t i, std::size_t j, int v) {
    data_[i * size() + j] = v;
    data_[j * size() + i] = v;
  }

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  std::vector<std::string> labels_;
  std::vector<int> data_;
};

/// First index triple without a tie for the minimum, or a diagonal/symmetry/positivity defect.
struct UltrametricViolation {
  std::array<std::size_t, 3> indices;
  std::string reason;
};

std::optional<UltrametricViolation> find_ultrametric_violation(const IntMatrix& m);

class NotUltrametric : public UsageError {
 public:
  explicit NotUltrametric(UltrametricViolation v)
      : UsageError("matrix is not ultrametric: " + v.reason), violation_(std::move(v)) {}
  const UltrametricViolation& violation() const { return violation_; }

 private:
  UltrametricViolation violation_;
};

/// M_ij = depth of mrca(i, j) with root depth 1; species ordered by sorted label
/// unless `order` is given (it must list exactly the tree's leaves).
IntMatrix tree_to_matrix(const PhyloTree& tree, const std::vector<std::string>& order = {});

/// The unique tree whose mrca labels realize `m`. Only the relative order of
/// values matters. When `values_as_ranks` is set each internal node carries
/// its matrix value as rank. Throws NotUltrametric.
PhyloTree matrix_to_tree(const IntMatrix& m, bool values_as_ranks = false);

}  // namespace umt
