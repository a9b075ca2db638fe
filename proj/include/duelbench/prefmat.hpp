#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

namespace duelbench {

using Arm = std::size_t;

// K x K matrix of win probabilities: at(i, j) is the probability that arm i
// beats arm j. Construction always goes through validation, so every
// instance satisfies at(i, j) + at(j, i) = 1 and at(i, i) = 1/2 (within
// kTolerance for matrices read from text) and has at least two arms.
// Instances are immutable and safe to share between threads.
class PreferenceMatrix {
 public:
  static constexpr double kTolerance = 1e-9;

  // Throws Error{not_square, entry_out_of_range, bad_diagonal, asymmetric_pair,
  // too_few_arms}.
  static PreferenceMatrix validate(const std::vector<std::vector<double>>& rows);
  static PreferenceMatrix validate(std::size_t k, std::vector<double> row_major);

  std::size_t arms() const { return k_; }
  double at(Arm i, Arm j) const { return p_[i * k_ + j]; }
  std::span<const double> row(Arm i) const { return {p_.data() + i * k_, k_}; }

 private:
  PreferenceMatrix(std::size_t k, std::vector<double> p) : k_(k), p_(std::move(p)) {}

  std::size_t k_;
  std::vector<double> p_;
};

struct TournamentSummary {
  std::vector<double> borda;
  std::vector<int> copeland;
  std::optional<Arm> condorcet_winner;
};

// Sum of an arm's win probabilities against the other arms. The diagonal is
// excluded; including it would add 1/2 to every score and leave the ranking
// unchanged.
std::vector<double> borda_scores(const PreferenceMatrix& m);

// Number of arms each arm beats with probability strictly above 1/2.
std::vector<int> copeland_scores(const PreferenceMatrix& m);

// The arm with Copeland score K - 1, if there is one.
std::optional<Arm> condorcet_winner(const PreferenceMatrix& m);

// Lowest-index arm with the highest Copeland score. Stands in for the
// Condorcet winner on matrices that have none.
Arm copeland_winner(const PreferenceMatrix& m);

TournamentSummary summarize(const PreferenceMatrix& m);

// P[i][j] = 1/2 + (j + 1) / (2K) for i < j with 0-based indices, i.e.
// 1/2 + j / (2K) in 1-based coordinates. Arm 0 is the Condorcet winner.
PreferenceMatrix savage_matrix(std::size_t k);

// 20 arms: arm 0 beats every other arm with probability 0.51, and arm i
// beats arm j surely for 0 < i < j. Arm 0 is the Condorcet winner but has the
// lowest Borda score.
PreferenceMatrix bvs_matrix();

// P[i][j] = (mu[i] - mu[j] + 1) / 2, the matrix induced by Bernoulli rewards
// with randomized tie-breaking. Throws Error{mean_out_of_range}.
PreferenceMatrix preference_from_utilities(std::span<const double> mu);

// Plain CSV: K rows of K decimal reals, no header.
PreferenceMatrix read_matrix_csv(std::istream& in);
PreferenceMatrix load_matrix_csv(const std::filesystem::path& path);
// 12 significant digits.
void write_matrix_csv(const PreferenceMatrix& m, std::ostream& out);
void save_matrix_csv(const PreferenceMatrix& m, const std::filesystem::path& path);

}  // namespace duelbench
