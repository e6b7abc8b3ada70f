#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "pamc/catalog.hpp"
#include "pamc/graph.hpp"

namespace pamc {

/// A claimed solution: instance name, hex-encoded configuration and the cut
/// it is said to achieve.
struct SolutionRecord {
  std::string instance;
  std::string hex;
  Energy claimed_cut = 0;
  std::string source;
};

/// "key = value" lines with keys instance, claimed_cut, hex and optionally
/// source. '#' lines are comments.
SolutionRecord parse_record(std::istream& in);
void write_record(std::ostream& out, const SolutionRecord& rec);

/// The best-known G63 configuration (cut 27,047) shipped with the library.
const SolutionRecord& published_g63_record();

/// Best known G63 cut before the shipped record.
inline constexpr Energy kPreviousG63BestCut = 27045;

struct VerificationReport {
  std::string instance;
  std::size_t nodes = 0;
  Energy computed_cut = 0;
  Energy claimed_cut = 0;
  bool match = false;
};

class InstanceMismatchError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Decodes rec.hex for g and compares its cut with the claim. Throws
/// HexFormatError for malformed hex and InstanceMismatchError when the catalog
/// knows rec.instance and g has a different node or edge count.
VerificationReport verify_record(const SolutionRecord& rec, const Graph& g,
                                 const InstanceCatalog& catalog = InstanceCatalog::builtin());

void print_report(std::ostream& out, const VerificationReport& report);

}  // namespace pamc
