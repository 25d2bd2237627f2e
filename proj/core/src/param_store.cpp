#include "transgnn/param_store.hpp"

#include <cmath>
#include <cstring>
#include <fstream>

#include "transgnn/errors.hpp"

namespace transgnn {

std::size_t ParameterStore::add(std::string name, Matrix value) {
  if (has(name)) throw ShapeError("ParameterStore: duplicate parameter '" + name + "'");
  Entry e;
  e.name = std::move(name);
  e.moment1 = Matrix(value.rows(), value.cols(), 0.0);
  e.moment2 = Matrix(value.rows(), value.cols(), 0.0);
  e.value = std::move(value);
  entries_.push_back(std::move(e));
  return entries_.size() - 1;
}

std::size_t ParameterStore::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i].name == name) return i;
  }
  throw ShapeError("ParameterStore: unknown parameter '" + std::string(name) + "'");
}

bool ParameterStore::has(std::string_view name) const {
  for (const auto& e : entries_) {
    if (e.name == name) return true;
  }
  return false;
}

void ParameterStore::assign_values(const ParameterStore& other) {
  if (other.count() != count()) throw ShapeError("assign_values: store size mismatch");
  for (std::size_t i = 0; i < count(); ++i) {
    if (entries_[i].name != other.entries_[i].name ||
        !entries_[i].value.same_shape(other.entries_[i].value)) {
      throw ShapeError("assign_values: incompatible stores");
    }
    entries_[i].value = other.entries_[i].value;
  }
}

GradientSet GradientSet::zeros_like(const ParameterStore& store) {
  GradientSet g;
  g.grads.reserve(store.count());
  for (std::size_t i = 0; i < store.count(); ++i) {
    g.grads.emplace_back(store.value(i).rows(), store.value(i).cols(), 0.0);
  }
  return g;
}

bool GradientSet::all_finite() const noexcept {
  for (const auto& m : grads) {
    if (!m.all_finite()) return false;
  }
  return true;
}

void adam_step(ParameterStore& store, const GradientSet& grads, const AdamConfig& cfg) {
  if (grads.count() != store.count()) throw ShapeError("adam_step: gradient count mismatch");
  for (std::size_t p = 0; p < store.count(); ++p) {
    auto& e = store.entry(p);
    const Matrix& g = grads[p];
    if (!g.same_shape(e.value)) throw ShapeError("adam_step: gradient shape mismatch");
    e.step += 1;
    const double bc1 = 1.0 - std::pow(cfg.beta1, static_cast<double>(e.step));
    const double bc2 = 1.0 - std::pow(cfg.beta2, static_cast<double>(e.step));
    for (std::size_t i = 0; i < e.value.size(); ++i) {
      double& m = e.moment1.data()[i];
      double& v = e.moment2.data()[i];
      const double gi = g.data()[i];
      m = cfg.beta1 * m + (1.0 - cfg.beta1) * gi;
      v = cfg.beta2 * v + (1.0 - cfg.beta2) * gi * gi;
      const double mhat = m / bc1;
      const double vhat = v / bc2;
      e.value.data()[i] -= cfg.lr * mhat / (std::sqrt(vhat) + cfg.eps);
    }
  }
}

Matrix glorot_uniform(std::size_t fan_in, std::size_t fan_out, Rng& rng) {
  const double bound = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
  Matrix w(fan_in, fan_out);
  for (std::size_t i = 0; i < w.size(); ++i) {
    w.data()[i] = rng.next_double(-bound, bound);
  }
  return w;
}

void save_checkpoint(const ParameterStore& store, const std::filesystem::path& file) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw IoError("cannot open checkpoint for writing: " + file.string());
  out << "transgnn-checkpoint v1\n" << store.count() << "\n";
  for (std::size_t i = 0; i < store.count(); ++i) {
    const auto& e = store.entry(i);
    out << e.name << " " << e.value.rows() << " " << e.value.cols() << " " << e.step << "\n";
  }
  for (std::size_t i = 0; i < store.count(); ++i) {
    const auto& v = store.value(i);
    out.write(reinterpret_cast<const char*>(v.data()),
              static_cast<std::streamsize>(v.size() * sizeof(double)));
  }
  if (!out) throw IoError("checkpoint write failed: " + file.string());
}

ParameterStore load_checkpoint(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw IoError("cannot open checkpoint: " + file.string());
  std::string magic, version;
  in >> magic >> version;
  if (magic != "transgnn-checkpoint" || version != "v1") {
    throw DataError("bad checkpoint header: " + file.string());
  }
  std::size_t count = 0;
  in >> count;
  struct Meta {
    std::string name;
    std::size_t rows, cols;
    std::int64_t step;
  };
  std::vector<Meta> metas(count);
  for (auto& m : metas) {
    in >> m.name >> m.rows >> m.cols >> m.step;
  }
  in.ignore(1);  // newline before the binary payload
  ParameterStore store;
  for (auto& m : metas) {
    Matrix v(m.rows, m.cols);
    in.read(reinterpret_cast<char*>(v.data()), static_cast<std::streamsize>(v.size() * sizeof(double)));
    if (!in) throw DataError("truncated checkpoint: " + file.string());
    const std::size_t idx = store.add(m.name, std::move(v));
    store.entry(idx).step = m.step;
  }
  return store;
}

}  // namespace transgnn
