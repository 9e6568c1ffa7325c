// mec: generate, corrupt, verify, and correct matrix products and inverses
// over a prime field. Exit codes: 0 verified or corrected, 1 verification
// failed, 2 bad input (flags, files, shapes).

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <random>
#include <string>
#include <unordered_set>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mec/corrector.hpp"
#include "mec/errors.hpp"
#include "mec/field.hpp"
#include "mec/matrix.hpp"
#include "mec/matrix_io.hpp"

using json = nlohmann::json;
using clock_type = std::chrono::steady_clock;

namespace {

struct JobConfig {
  std::uint64_t p = 2013265921;
  double eps = std::ldexp(1.0, -30);
  std::uint64_t seed = 1;
  std::size_t n = 16, m = 0, l = 0;  // m, l default to n
  std::uint64_t k = 1;
  std::string pattern = "uniform";
  std::string mode = "product";
  std::string in_a, in_b, in_c, out;
};

double ms_between(clock_type::time_point a, clock_type::time_point b) {
  return std::chrono::duration<double, std::milli>(b - a).count();
}

mec::Matrix random_matrix(const mec::FieldContext& F, std::size_t m, std::size_t n,
                          std::mt19937_64& rng) {
  mec::Matrix M(m, n);
  for (std::size_t i = 0; i < m; ++i) {
    mec::Fp* row = M.row(i);
    for (std::size_t j = 0; j < n; ++j) row[j] = F.sample(rng);
  }
  return M;
}

mec::Matrix random_invertible(const mec::FieldContext& F, std::size_t n, std::mt19937_64& rng) {
  for (int attempt = 0; attempt < 100; ++attempt) {
    mec::Matrix A = random_matrix(F, n, n, rng);
    try {
      gauss_inverse(F, A);
      return A;
    } catch (const mec::SingularInput&) {
    }
  }
  throw mec::SingularDraw("no invertible matrix in 100 draws");
}

// k distinct cells inside rows [r0, r0+rh) x cols [c0, c0+cw), uniformly.
std::vector<std::pair<std::size_t, std::size_t>> sample_cells(std::size_t r0, std::size_t rh,
                                                              std::size_t c0, std::size_t cw,
                                                              std::uint64_t k,
                                                              std::mt19937_64& rng) {
  const std::uint64_t region = static_cast<std::uint64_t>(rh) * cw;
  std::vector<std::pair<std::size_t, std::size_t>> cells;
  cells.reserve(k);
  if (k * 2 <= region) {
    std::unordered_set<std::uint64_t> seen;
    while (seen.size() < k) {
      std::uint64_t flat = rng() % region;
      if (seen.insert(flat).second)
        cells.emplace_back(r0 + flat / cw, c0 + flat % cw);
    }
  } else {
    std::vector<std::uint64_t> flat(region);
    for (std::uint64_t i = 0; i < region; ++i) flat[i] = i;
    for (std::uint64_t i = region - 1; i > 0; --i)
      std::swap(flat[i], flat[rng() % (i + 1)]);
    for (std::uint64_t i = 0; i < k; ++i)
      cells.emplace_back(r0 + flat[i] / cw, c0 + flat[i] % cw);
  }
  return cells;
}

mec::SparseMatrix make_noise(const mec::FieldContext& F, std::size_t m, std::size_t n,
                             std::uint64_t k, const std::string& pattern,
                             std::mt19937_64& rng) {
  if (k > static_cast<std::uint64_t>(m) * n)
    throw mec::TooManyErrors("k exceeds the cell count");
  std::vector<std::pair<std::size_t, std::size_t>> cells;
  if (k == 0) {
  } else if (pattern == "uniform") {
    cells = sample_cells(0, m, 0, n, k, rng);
  } else if (pattern == "row-band") {
    std::size_t band = static_cast<std::size_t>((k + n - 1) / n);
    std::size_t r0 = band < m ? rng() % (m - band + 1) : 0;
    cells = sample_cells(r0, band, 0, n, k, rng);
  } else if (pattern == "submatrix") {
    std::size_t side = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(k))));
    while (side * side < k) ++side;
    if (side > m || side > n)
      throw mec::TooManyErrors("submatrix block does not fit the matrix");
    std::size_t r0 = rng() % (m - side + 1);
    std::size_t c0 = rng() % (n - side + 1);
    cells = sample_cells(r0, side, c0, side, k, rng);
  } else {
    throw std::invalid_argument("unknown pattern: " + pattern);
  }
  mec::SparseMatrix noise(m, n);
  for (const auto& [i, j] : cells) noise.add_at(i, j, F.sample_nonzero(rng), F);
  return noise;
}

void echo_field(const mec::FieldContext& F) {
  std::fprintf(stderr, "p=%llu theta=%llu order=%llu\n",
               static_cast<unsigned long long>(F.modulus()),
               static_cast<unsigned long long>(F.theta().v),
               static_cast<unsigned long long>(F.theta_order()));
}

void print_report(std::size_t iterations, std::uint64_t final_k, bool fell_back,
                  std::size_t orientation_flips, double wall_ms, std::size_t nnz_e) {
  json rep;
  rep["iterations"] = iterations;
  rep["final_k"] = final_k;
  rep["fell_back"] = fell_back;
  rep["orientation_flips"] = orientation_flips;
  rep["wall_ms"] = wall_ms;
  rep["nnz_e"] = nnz_e;
  std::printf("%s\n", rep.dump().c_str());
}

int cmd_gen(const JobConfig& cfg) {
  const std::size_t n = cfg.n;
  const std::size_t m = cfg.m ? cfg.m : n;
  const std::size_t l = cfg.l ? cfg.l : n;
  mec::FieldContext F(cfg.p, 1);
  std::mt19937_64 rng(cfg.seed);
  if (cfg.mode == "inverse") {
    mec::Matrix A = random_invertible(F, n, rng);
    mec::Matrix B = gauss_inverse(F, A);
    mec::write_dense_file(cfg.in_a, A, F.modulus());
    mec::write_dense_file(cfg.in_b, B, F.modulus());
  } else {
    mec::Matrix A = random_matrix(F, m, l, rng);
    mec::Matrix B = random_matrix(F, l, n, rng);
    mec::Matrix C = mat_mul(F, A, B);
    mec::write_dense_file(cfg.in_a, A, F.modulus());
    mec::write_dense_file(cfg.in_b, B, F.modulus());
    mec::write_dense_file(cfg.in_c, C, F.modulus());
  }
  return 0;
}

int cmd_corrupt(const JobConfig& cfg) {
  mec::MatrixFile in = mec::read_matrix_file(cfg.in_c);
  mec::FieldContext F(in.modulus, 1);
  std::mt19937_64 rng(cfg.seed);
  mec::Matrix M = in.to_dense();
  mec::SparseMatrix noise = make_noise(F, M.rows(), M.cols(), cfg.k, cfg.pattern, rng);
  for (const auto& e : noise.entries())
    M.set(e.row, e.col, F.add(M.at(e.row, e.col), e.value));
  if (in.is_dense)
    mec::write_dense_file(cfg.out, M, F.modulus());
  else
    mec::write_sparse_file(cfg.out, mec::SparseMatrix::from_dense(M), F.modulus());
  // The truth file holds the E the corrector should report: +noise for a
  // corrupted product (C - E = AB), -noise for a corrupted inverse
  // (A^{-1} = B + E).
  mec::SparseMatrix truth = noise;
  if (cfg.mode == "inverse") {
    mec::SparseMatrix neg(noise.rows(), noise.cols());
    for (const auto& e : noise.entries()) neg.add_at(e.row, e.col, F.neg(e.value), F);
    truth = neg;
  }
  mec::write_sparse_file(cfg.out + ".truth", truth, F.modulus());
  return 0;
}

int cmd_verify(const JobConfig& cfg) {
  mec::MatrixFile fa = mec::read_matrix_file(cfg.in_a);
  mec::MatrixFile fb = mec::read_matrix_file(cfg.in_b);
  if (fa.modulus != fb.modulus) throw mec::ShapeMismatch("input moduli disagree");
  mec::FieldContext F(fa.modulus, 1);
  std::mt19937_64 rng(cfg.seed);
  echo_field(F);
  auto t0 = clock_type::now();
  bool ok;
  if (cfg.mode == "inverse") {
    ok = verify_inverse(F, fa.to_dense(), fb.to_dense(), cfg.eps, rng);
  } else {
    mec::MatrixFile fc = mec::read_matrix_file(cfg.in_c);
    if (fc.modulus != fa.modulus) throw mec::ShapeMismatch("input moduli disagree");
    ok = verify_product(F, fa.to_dense(), fb.to_dense(), fc.to_dense(), cfg.eps, rng);
  }
  print_report(0, 1, false, 0, ms_between(t0, clock_type::now()), 0);
  return ok ? 0 : 1;
}

int cmd_correct(const JobConfig& cfg, bool inverse) {
  mec::MatrixFile fa = mec::read_matrix_file(cfg.in_a);
  mec::MatrixFile fb = mec::read_matrix_file(cfg.in_b);
  if (fa.modulus != fb.modulus) throw mec::ShapeMismatch("input moduli disagree");
  mec::Matrix A = fa.to_dense();
  mec::Matrix B = fb.to_dense();
  std::mt19937_64 rng(cfg.seed);
  mec::CorrectionReport rep;
  auto t0 = clock_type::now();
  if (inverse) {
    mec::FieldContext F(fa.modulus, A.rows());
    echo_field(F);
    t0 = clock_type::now();
    rep = inverse_ec(F, A, B, cfg.eps, rng);
    if (!cfg.out.empty()) mec::write_sparse_file(cfg.out, rep.errors, F.modulus());
  } else {
    mec::MatrixFile fc = mec::read_matrix_file(cfg.in_c);
    if (fc.modulus != fa.modulus) throw mec::ShapeMismatch("input moduli disagree");
    mec::Matrix C = fc.to_dense();
    mec::FieldContext F(fa.modulus, std::max(C.rows(), C.cols()));
    echo_field(F);
    t0 = clock_type::now();
    rep = multiply_ec(F, A, B, C, cfg.eps, rng);
    if (!cfg.out.empty()) mec::write_sparse_file(cfg.out, rep.errors, F.modulus());
  }
  print_report(rep.iterations, rep.final_k, rep.fell_back, rep.orientation_flips,
               ms_between(t0, clock_type::now()), rep.errors.nnz());
  return 0;
}

int cmd_oracle(const JobConfig& cfg) {
  mec::MatrixFile fa = mec::read_matrix_file(cfg.in_a);
  mec::MatrixFile fb = mec::read_matrix_file(cfg.in_b);
  if (fa.modulus != fb.modulus) throw mec::ShapeMismatch("input moduli disagree");
  mec::FieldContext F(fa.modulus, 1);
  mec::Matrix E;
  if (cfg.mode == "inverse") {
    E = mat_sub(F, gauss_inverse(F, fa.to_dense()), fb.to_dense());
  } else {
    mec::MatrixFile fc = mec::read_matrix_file(cfg.in_c);
    if (fc.modulus != fa.modulus) throw mec::ShapeMismatch("input moduli disagree");
    E = mat_sub(F, fc.to_dense(), mat_mul(F, fa.to_dense(), fb.to_dense()));
  }
  mec::write_sparse_file(cfg.out, mec::SparseMatrix::from_dense(E), F.modulus());
  return 0;
}

int cmd_bench(const JobConfig& cfg) {
  const std::size_t n = cfg.n;
  mec::FieldContext F(cfg.p, n);
  echo_field(F);
  std::mt19937_64 rng(cfg.seed);
  mec::Matrix A = random_matrix(F, n, n, rng);
  mec::Matrix B = random_matrix(F, n, n, rng);

  std::string csv = "n,k,pattern,t_correct_ms,t_recompute_ms,ratio\n";
  const std::uint64_t cells = static_cast<std::uint64_t>(n) * n;
  for (std::uint64_t k : {cfg.k, cfg.k * 16, cfg.k * 256}) {
    if (k > cells) k = cells;
    auto t0 = clock_type::now();
    mec::Matrix C = mat_mul(F, A, B);
    double t_recompute = ms_between(t0, clock_type::now());

    mec::SparseMatrix noise = make_noise(F, n, n, k, cfg.pattern, rng);
    for (const auto& e : noise.entries())
      C.set(e.row, e.col, F.add(C.at(e.row, e.col), e.value));

    t0 = clock_type::now();
    mec::CorrectionReport rep = multiply_ec(F, A, B, C, cfg.eps, rng);
    double t_correct = ms_between(t0, clock_type::now());
    if (!(rep.errors == noise))
      throw std::runtime_error("bench instance was not corrected exactly");

    char line[160];
    std::snprintf(line, sizeof line, "%zu,%llu,%s,%.3f,%.3f,%.6f\n", n,
                  static_cast<unsigned long long>(k), cfg.pattern.c_str(), t_correct,
                  t_recompute, t_correct / t_recompute);
    csv += line;
  }
  if (cfg.out.empty()) {
    std::fputs(csv.c_str(), stdout);
  } else {
    FILE* f = std::fopen(cfg.out.c_str(), "wb");
    if (!f) throw mec::IOError("cannot open " + cfg.out);
    std::fputs(csv.c_str(), f);
    std::fclose(f);
  }
  return 0;
}

void add_common(CLI::App* sub, JobConfig& cfg) {
  sub->add_option("--p", cfg.p, "prime modulus");
  sub->add_option("--eps", cfg.eps, "failure probability bound");
  sub->add_option("--seed", cfg.seed, "RNG seed");
  sub->add_option("--n", cfg.n, "columns of B / size of square instances");
  sub->add_option("--m", cfg.m, "rows of A (defaults to n)");
  sub->add_option("--l", cfg.l, "inner dimension (defaults to n)");
  sub->add_option("--k", cfg.k, "error count");
  sub->add_option("--pattern", cfg.pattern, "uniform | row-band | submatrix")
      ->check(CLI::IsMember({"uniform", "row-band", "submatrix"}));
  sub->add_option("--in-a", cfg.in_a, "matrix A path");
  sub->add_option("--in-b", cfg.in_b, "matrix B path");
  sub->add_option("--in-c", cfg.in_c, "matrix C path");
  sub->add_option("--out", cfg.out, "output path");
  sub->add_option("--mode", cfg.mode, "product | inverse")
      ->check(CLI::IsMember({"product", "inverse"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"error-corrected matrix product and inverse checker"};
  app.require_subcommand(1);
  JobConfig cfg;

  auto* gen = app.add_subcommand("gen", "write a random instance (A, B, C or A, B)");
  auto* corrupt = app.add_subcommand("corrupt", "add k errors to a matrix, write truth E");
  auto* verify = app.add_subcommand("verify", "probabilistic check, no correction");
  auto* cp = app.add_subcommand("correct-product", "find E with AB = C - E");
  auto* ci = app.add_subcommand("correct-inverse", "find E with A^{-1} = B + E");
  auto* bench = app.add_subcommand("bench", "time correction against full recompute");
  auto* oracle = app.add_subcommand("oracle", "exact dense E by brute force");
  for (CLI::App* sub : {gen, corrupt, verify, cp, ci, bench, oracle}) add_common(sub, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (gen->parsed()) return cmd_gen(cfg);
    if (corrupt->parsed()) return cmd_corrupt(cfg);
    if (verify->parsed()) return cmd_verify(cfg);
    if (cp->parsed()) return cmd_correct(cfg, false);
    if (ci->parsed()) return cmd_correct(cfg, true);
    if (bench->parsed()) return cmd_bench(cfg);
    if (oracle->parsed()) return cmd_oracle(cfg);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 2;
}
