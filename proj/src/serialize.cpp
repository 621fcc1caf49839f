#include "optidual/serialize.hpp"

#include <cstdint>
#include <fstream>
#include <stdexcept>

namespace optidual {

namespace {

constexpr char kMagic[4] = {'O', 'D', 'L', '1'};
constexpr std::uint32_t kVersion = 1;

template <typename T>
void write_pod(std::ostream& out, const T& value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T read_pod(std::istream& in) {
  T value{};
  in.read(reinterpret_cast<char*>(&value), sizeof(T));
  if (!in) throw std::runtime_error("serialize: truncated container");
  return value;
}

void write_complex_matrix(std::ostream& out, const CMatrix& matrix) {
  for (Eigen::Index r = 0; r < matrix.rows(); ++r) {
    for (Eigen::Index c = 0; c < matrix.cols(); ++c) {
      write_pod(out, matrix(r, c).real());
      write_pod(out, matrix(r, c).imag());
    }
  }
}

CMatrix read_complex_matrix(std::istream& in, Eigen::Index rows, Eigen::Index cols) {
  CMatrix matrix(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) {
      const double re = read_pod<double>(in);
      const double im = read_pod<double>(in);
      matrix(r, c) = Complex(re, im);
    }
  }
  return matrix;
}

std::ofstream open_out(const std::filesystem::path& path, std::ios::openmode mode) {
  std::ofstream out(path, mode);
  if (!out) throw std::runtime_error("serialize: cannot open " + path.string());
  return out;
}

std::ifstream open_in(const std::filesystem::path& path, std::ios::openmode mode) {
  std::ifstream in(path, mode);
  if (!in) throw std::runtime_error("serialize: cannot open " + path.string());
  return in;
}

}  // namespace

void save_dictionary(const Dictionary& dict, const std::filesystem::path& path) {
  auto out = open_out(path, std::ios::binary);
  out.write(kMagic, 4);
  write_pod(out, kVersion);
  write_pod(out, static_cast<std::uint32_t>(dict.kind()));
  write_pod(out, static_cast<std::uint64_t>(dict.n()));
  write_pod(out, static_cast<std::uint64_t>(dict.d()));
  const auto& lattice = dict.lattice();
  write_pod(out, static_cast<std::int32_t>(lattice.time_step));
  write_pod(out, static_cast<std::int32_t>(lattice.num_shifts));
  write_pod(out, static_cast<std::int32_t>(lattice.num_freqs));
  write_pod(out, lattice.window_std);
  write_complex_matrix(out, dict.atoms());
}

Dictionary load_dictionary(const std::filesystem::path& path) {
  auto in = open_in(path, std::ios::binary);
  char magic[4];
  in.read(magic, 4);
  if (!in || std::string(magic, 4) != std::string(kMagic, 4)) {
    throw std::runtime_error("load_dictionary: bad magic in " + path.string());
  }
  const auto version = read_pod<std::uint32_t>(in);
  if (version != kVersion) {
    throw std::runtime_error("load_dictionary: unsupported container version");
  }
  const auto kind = static_cast<DictionaryKind>(read_pod<std::uint32_t>(in));
  const auto n = static_cast<Eigen::Index>(read_pod<std::uint64_t>(in));
  const auto d = static_cast<Eigen::Index>(read_pod<std::uint64_t>(in));
  GaborLattice lattice;
  lattice.time_step = read_pod<std::int32_t>(in);
  lattice.num_shifts = read_pod<std::int32_t>(in);
  lattice.num_freqs = read_pod<std::int32_t>(in);
  lattice.window_std = read_pod<double>(in);
  CMatrix atoms = read_complex_matrix(in, n, d);
  // atoms were normalized (or deliberately scaled) before saving
  return Dictionary(std::move(atoms), kind, lattice, false);
}

void save_matrix_csv(const CMatrix& matrix, const std::filesystem::path& path) {
  auto out = open_out(path, std::ios::out);
  out.precision(17);
  for (Eigen::Index c = 0; c < matrix.cols(); ++c) {
    out << (c ? "," : "") << "re" << c << ",im" << c;
  }
  out << "\n";
  for (Eigen::Index r = 0; r < matrix.rows(); ++r) {
    for (Eigen::Index c = 0; c < matrix.cols(); ++c) {
      out << (c ? "," : "") << matrix(r, c).real() << "," << matrix(r, c).imag();
    }
    out << "\n";
  }
}

void save_sensing(const SensingEnsemble& phi, const std::filesystem::path& binary_path,
                  const std::filesystem::path& meta_path) {
  auto out = open_out(binary_path, std::ios::binary);
  out.write(kMagic, 4);
  write_pod(out, kVersion);
  write_pod(out, static_cast<std::uint64_t>(phi.m));
  write_pod(out, static_cast<std::uint64_t>(phi.n));
  for (int i = 0; i < phi.m; ++i) {
    for (int j = 0; j < phi.n; ++j) write_pod(out, phi.phi(i, j));
  }
  nlohmann::json meta{{"m", phi.m}, {"n", phi.n}, {"seed", phi.seed}, {"scale", phi.scale}};
  open_out(meta_path, std::ios::out) << meta.dump(2) << "\n";
}

SensingEnsemble load_sensing(const std::filesystem::path& binary_path,
                             const std::filesystem::path& meta_path) {
  auto in = open_in(binary_path, std::ios::binary);
  char magic[4];
  in.read(magic, 4);
  if (!in || std::string(magic, 4) != std::string(kMagic, 4)) {
    throw std::runtime_error("load_sensing: bad magic");
  }
  if (read_pod<std::uint32_t>(in) != kVersion) {
    throw std::runtime_error("load_sensing: unsupported container version");
  }
  const auto m = static_cast<int>(read_pod<std::uint64_t>(in));
  const auto n = static_cast<int>(read_pod<std::uint64_t>(in));
  RMatrix phi(m, n);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) phi(i, j) = read_pod<double>(in);
  }
  nlohmann::json meta = nlohmann::json::parse(open_in(meta_path, std::ios::in));
  return SensingEnsemble{std::move(phi), m, n, meta.value("seed", std::uint64_t{0}),
                         meta.value("scale", 0.0)};
}

nlohmann::json cvector_to_json(const CVector& v) {
  nlohmann::json arr = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    arr.push_back({v(i).real(), v(i).imag()});
  }
  return arr;
}

CVector cvector_from_json(const nlohmann::json& j) {
  CVector v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    v(static_cast<Eigen::Index>(i)) = Complex(j[i][0].get<double>(), j[i][1].get<double>());
  }
  return v;
}

nlohmann::json ground_truth_to_json(const GroundTruth& gt) {
  return {{"s", gt.s},
          {"support", gt.support},
          {"x", cvector_to_json(gt.x)},
          {"f", cvector_to_json(gt.f)}};
}

nlohmann::json recovery_result_to_json(const RecoveryResult& result) {
  return {{"f_hat", cvector_to_json(result.f_hat)},
          {"f_iterate", cvector_to_json(result.f_iterate)},
          {"x_hat", cvector_to_json(result.x_hat)},
          {"p_g", cvector_to_json(result.p_g)},
          {"residual_trace", result.residual_trace},
          {"outer_iters", result.outer_iters},
          {"objective", result.objective},
          {"converged", result.converged}};
}

}  // namespace optidual
