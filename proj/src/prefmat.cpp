#include "duelbench/prefmat.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <string>

#include "duelbench/csv.hpp"
#include "duelbench/error.hpp"

namespace duelbench {
namespace {

std::string pair_label(std::size_t i, std::size_t j) {
  return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

}  // namespace

PreferenceMatrix PreferenceMatrix::validate(const std::vector<std::vector<double>>& rows) {
  const std::size_t k = rows.size();
  std::vector<double> flat;
  flat.reserve(k * k);
  for (const auto& row : rows) {
    if (row.size() != k) {
      throw Error(Errc::not_square, std::to_string(k) + " rows but a row has " +
                                        std::to_string(row.size()) + " entries");
    }
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return validate(k, std::move(flat));
}

PreferenceMatrix PreferenceMatrix::validate(std::size_t k, std::vector<double> p) {
  if (p.size() != k * k) throw Error(Errc::not_square, "expected K*K entries");
  if (k < 2) throw Error(Errc::too_few_arms, "a preference matrix needs at least 2 arms");
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      const double v = p[i * k + j];
      if (!(v >= 0.0 && v <= 1.0)) {
        throw Error(Errc::entry_out_of_range, "entry " + pair_label(i, j) + " = " +
                                                  csv::format_real(v) + " is outside [0,1]");
      }
    }
  }
  for (std::size_t i = 0; i < k; ++i) {
    if (std::abs(p[i * k + i] - 0.5) > kTolerance) {
      throw Error(Errc::bad_diagonal, "entry " + pair_label(i, i) + " must be 1/2");
    }
  }
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      if (std::abs(p[i * k + j] + p[j * k + i] - 1.0) > kTolerance) {
        throw Error(Errc::asymmetric_pair, pair_label(i, j));
      }
    }
  }
  return PreferenceMatrix(k, std::move(p));
}

std::vector<double> borda_scores(const PreferenceMatrix& m) {
  const std::size_t k = m.arms();
  std::vector<double> borda(k, 0.0);
  for (Arm i = 0; i < k; ++i) {
    for (Arm j = 0; j < k; ++j) {
      if (j != i) borda[i] += m.at(i, j);
    }
  }
  return borda;
}

std::vector<int> copeland_scores(const PreferenceMatrix& m) {
  const std::size_t k = m.arms();
  std::vector<int> copeland(k, 0);
  for (Arm i = 0; i < k; ++i) {
    for (Arm j = 0; j < k; ++j) {
      if (j != i && m.at(i, j) > 0.5) ++copeland[i];
    }
  }
  return copeland;
}

std::optional<Arm> condorcet_winner(const PreferenceMatrix& m) {
  const auto copeland = copeland_scores(m);
  const int target = static_cast<int>(m.arms()) - 1;
  for (Arm i = 0; i < copeland.size(); ++i) {
    if (copeland[i] == target) return i;
  }
  return std::nullopt;
}

Arm copeland_winner(const PreferenceMatrix& m) {
  const auto copeland = copeland_scores(m);
  Arm best = 0;
  for (Arm i = 1; i < copeland.size(); ++i) {
    if (copeland[i] > copeland[best]) best = i;
  }
  return best;
}

TournamentSummary summarize(const PreferenceMatrix& m) {
  return {borda_scores(m), copeland_scores(m), condorcet_winner(m)};
}

PreferenceMatrix savage_matrix(std::size_t k) {
  if (k < 2) throw Error(Errc::too_few_arms, "savage matrix needs at least 2 arms");
  std::vector<double> p(k * k, 0.5);
  const double denom = 2.0 * static_cast<double>(k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      const double v = 0.5 + static_cast<double>(j + 1) / denom;
      p[i * k + j] = v;
      p[j * k + i] = 1.0 - v;
    }
  }
  return PreferenceMatrix::validate(k, std::move(p));
}

PreferenceMatrix bvs_matrix() {
  constexpr std::size_t k = 20;
  std::vector<double> p(k * k, 0.5);
  for (std::size_t j = 1; j < k; ++j) {
    p[j] = 0.51;
    p[j * k] = 1.0 - 0.51;
  }
  for (std::size_t i = 1; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      p[i * k + j] = 1.0;
      p[j * k + i] = 0.0;
    }
  }
  return PreferenceMatrix::validate(k, std::move(p));
}

PreferenceMatrix preference_from_utilities(std::span<const double> mu) {
  const std::size_t k = mu.size();
  for (std::size_t i = 0; i < k; ++i) {
    if (!(mu[i] >= 0.0 && mu[i] <= 1.0)) {
      throw Error(Errc::mean_out_of_range, "mean of arm " + std::to_string(i) + " is outside [0,1]");
    }
  }
  if (k < 2) throw Error(Errc::too_few_arms, "need at least 2 arms");
  std::vector<double> p(k * k, 0.5);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      const double v = (mu[i] - mu[j] + 1.0) / 2.0;
      p[i * k + j] = v;
      p[j * k + i] = 1.0 - v;
    }
  }
  return PreferenceMatrix::validate(k, std::move(p));
}

PreferenceMatrix read_matrix_csv(std::istream& in) {
  return PreferenceMatrix::validate(csv::read_reals(in));
}

PreferenceMatrix load_matrix_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::io_error, "cannot open " + path.string());
  return read_matrix_csv(in);
}

void write_matrix_csv(const PreferenceMatrix& m, std::ostream& out) {
  for (Arm i = 0; i < m.arms(); ++i) {
    for (Arm j = 0; j < m.arms(); ++j) {
      if (j != 0) out << ',';
      out << csv::format_real(m.at(i, j));
    }
    out << '\n';
  }
}

void save_matrix_csv(const PreferenceMatrix& m, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(Errc::io_error, "cannot write " + path.string());
  write_matrix_csv(m, out);
  if (!out) throw Error(Errc::io_error, "failed writing " + path.string());
}

}  // namespace duelbench
