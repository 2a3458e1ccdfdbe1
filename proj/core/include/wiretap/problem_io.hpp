#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "wiretap/finite_alphabet.hpp"
#include "wiretap/problem.hpp"

namespace wiretap {

/// Malformed problem or alphabet document. `where` is either a "line L,
/// column C" location for syntax errors or a field path such as "H[1][0][2]".
class ProblemFormatError : public std::invalid_argument {
 public:
  ProblemFormatError(std::string where, const std::string& message)
      : std::invalid_argument(where + ": " + message), where_(std::move(where)) {}
  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

struct ProblemFile {
  WiretapProblem problem;
  CsiMode csi_mode = StatisticalCsi{};
  std::optional<Alphabet> alphabet;
  std::vector<std::string> warnings;
};

/// {"N", "K", "J", "N0", "epsilon", "P_T": {"value", "unit": "linear"|"dB"},
///  "H": [N x N of [re, im]] x K, "Z": ... x J, "csi_mode", "alphabet"}.
/// A bare number for P_T is read as linear. Covariances are Hermitian-
/// symmetrized after a sanity check on their defect.
ProblemFile parse_problem(const std::string& text);
ProblemFile load_problem(const std::string& path);

/// Emits a document that parse_problem maps back to an identical problem.
std::string emit_problem(const ProblemFile& file);
std::string emit_problem(const WiretapProblem& p);

/// A JSON list of [re, im] symbols, normalized to zero mean and unit energy.
/// Adds a warning when normalization moved any symbol by more than 1e-9.
Alphabet parse_alphabet(const std::string& text, const std::string& name, std::vector<std::string>* warnings = nullptr);
Alphabet load_alphabet(const std::string& path, std::vector<std::string>* warnings = nullptr);

std::string read_text_file(const std::string& path);

}  // namespace wiretap
