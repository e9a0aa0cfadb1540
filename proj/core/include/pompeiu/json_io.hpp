#ifndef POMPEIU_JSON_IO_HPP
#define POMPEIU_JSON_IO_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "pompeiu/decision.hpp"
#include "pompeiu/exact_field.hpp"
#include "pompeiu/functions.hpp"
#include "pompeiu/interval_set.hpp"
#include "pompeiu/verifier.hpp"

namespace pompeiu::io {

using Json = nlohmann::json;

/// Input document does not match the expected schema.
class FormatError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

Json to_json(const QField& x);
QField qfield_from_json(const Json& j);

/// {"field_d": d, "intervals": [["a1","b1"], ...]}
Json to_json(const IntervalSet& set);
/// Accepts the object form or a bare array of pairs. When `field_d` is given
/// (or present in the object) every radical must use that radicand.
IntervalSet interval_set_from_json(const Json& j, std::optional<std::int64_t> field_d = {});

Json to_json(const TwoIntervalParams& params);
Json to_json(const ConditionReport& report);
/// {"holds", "reason", "conditions", "params", "counterexample"}
Json to_json(const Verdict& verdict);

/// Descriptor keyed by "variant". Recurrence extensions carry their set and
/// seed, never evaluated values.
Json to_json(const Function& f);
Function function_from_json(const Json& j);

Json to_json(const InvarianceReport& report, bool include_rows = false);
/// Rows "t,reflected,integral", one per sample, in sampling order.
std::string to_csv(const InvarianceReport& report);

/// Serializes with every floating value printed to 17 significant digits.
std::string dump(const Json& j, int indent = 2);
std::string format_double(double x);

}  // namespace pompeiu::io

#endif  // POMPEIU_JSON_IO_HPP
