#pragma once

// Text formats and the command dispatcher behind the jointlab executable.
//
// Instance files:   line px py pz dx dy dz
//                   point x y z
// Polynomial files: term coef i j k        (coef * x^i y^j z^k)
// Scalars are integers or num/den. '#' starts a comment.

#include "jointlab/constructions.hpp"
#include "jointlab/poly3.hpp"

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace jointlab::cli {

/// Exit codes of run().
enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kParse = 2,
  kPrecondition = 3,
  kHypothesis = 4,
  kConfig = 5,
  kInvariant = 6,
};

/// Lines and points canonicalized, sorted and deduplicated. Throws ParseError.
Instance parse_instance(std::string_view text);
/// Lines first, then points, one record per line.
std::string serialize_instance(const Instance& inst);
/// Label, `# predicted:` block and report entries as comments, then the records.
std::string serialize_generated(const GeneratedInstance& g);

/// Throws ParseError on repeated exponents or zero coefficients.
MultiPoly3 parse_poly(std::string_view text);
/// Terms in descending graded-lex order.
std::string serialize_poly(const MultiPoly3& p);

/// Runs one command; args exclude the program name. Data goes to `out`,
/// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace jointlab::cli
