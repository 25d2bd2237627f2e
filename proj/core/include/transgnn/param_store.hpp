#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "transgnn/matrix.hpp"
#include "transgnn/rng.hpp"

namespace transgnn {

// Named parameter set with per-parameter Adam state. Both GNN branches read
// the same store; one storage location per name is what makes the weights
// shared.
class ParameterStore {
public:
  struct Entry {
    std::string name;
    Matrix value;
    Matrix moment1;
    Matrix moment2;
    std::int64_t step = 0;
  };

  std::size_t add(std::string name, Matrix value);
  std::size_t index_of(std::string_view name) const;  // throws if absent
  bool has(std::string_view name) const;

  std::size_t count() const noexcept { return entries_.size(); }
  const std::string& name(std::size_t i) const { return entries_[i].name; }

  Matrix& value(std::size_t i) { return entries_[i].value; }
  const Matrix& value(std::size_t i) const { return entries_[i].value; }
  Matrix& value(std::string_view name) { return entries_[index_of(name)].value; }
  const Matrix& value(std::string_view name) const { return entries_[index_of(name)].value; }

  Entry& entry(std::size_t i) { return entries_[i]; }
  const Entry& entry(std::size_t i) const { return entries_[i]; }

  // copies parameter values (not optimizer state) from another store with
  // identical names/shapes
  void assign_values(const ParameterStore& other);

private:
  std::vector<Entry> entries_;
};

// Per-parameter gradients, shape-aligned with a store.
struct GradientSet {
  std::vector<Matrix> grads;

  static GradientSet zeros_like(const ParameterStore& store);
  Matrix& operator[](std::size_t i) { return grads[i]; }
  const Matrix& operator[](std::size_t i) const { return grads[i]; }
  std::size_t count() const noexcept { return grads.size(); }
  bool all_finite() const noexcept;
};

struct AdamConfig {
  double lr = 0.01;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

// Standard Adam update with bias correction; increments each parameter's
// step count once per call.
void adam_step(ParameterStore& store, const GradientSet& grads, const AdamConfig& cfg);

// Uniform in +-sqrt(6 / (fan_in + fan_out)).
Matrix glorot_uniform(std::size_t fan_in, std::size_t fan_out, Rng& rng);

// Checkpoint format: text header (names, shapes, step counts) followed by
// row-major little-endian doubles per parameter.
void save_checkpoint(const ParameterStore& store, const std::filesystem::path& file);
ParameterStore load_checkpoint(const std::filesystem::path& file);

}  // namespace transgnn
