#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "iterindex/germ.hpp"
#include "iterindex/mec.hpp"
#include "iterindex/orbits.hpp"
#include "iterindex/rational.hpp"
#include "iterindex/seq.hpp"

// JSON input schemas for the command-line tool. Every object rejects
// fields it does not know.

namespace iterindex::cli {

using Json = nlohmann::json;

class SchemaError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kMaxSetSize = 64;

Json read_json_file(const std::string& path);

/// Accepts "num/den" strings or JSON integers.
Rational rational_from_json(const Json& j, const std::string& where);
Json rational_to_json(const Rational& r);

struct SequenceInput {
    seq::SubordinatedSequence sequence;
    bool fitted = false;  // built from one raw period
};

/// {"set": [...], "values": {"q": "num/den"}} or {"period": L, "values": [...]}.
/// The raw form is fitted and may throw seq::FitError.
SequenceInput sequence_from_json(const Json& j);
Json sequence_to_json(const seq::SubordinatedSequence& s);

/// {"variant": "nondeg" | "elliptic2d" | "degenerate2d", ...}. Numeric
/// germs are rejected.
germ::GermModel germ_from_json(const Json& j);

mec::ReebOrbitRecord orbit_from_json(const Json& j);

struct OrbitTable {
    std::vector<mec::ReebOrbitRecord> orbits;
    std::map<std::string, std::vector<mec::LocalHomologyEntry>> local_tables;
};

/// A list of records, or {"orbits": [...], "local_tables": {label: [...]}}.
OrbitTable orbit_table_from_json(const Json& j);

/// {"builtin": "sphere", "n": 2}, {"builtin": "zero"}, or
/// {"explicit": {"deg": dim}, "positive_tail": {"start", "pattern"},
///  "negative_tail": {...}, "l_plus", "l_minus"}.
mec::HomologyProfile profile_from_json(const Json& j);

/// "circle:d=2" or "torus:a,b,c,d" (row-major).
orbits::MapModel map_from_spec(const std::string& spec);

}  // namespace iterindex::cli
