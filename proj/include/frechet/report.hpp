#ifndef FRECHET_REPORT_HPP
#define FRECHET_REPORT_HPP

#include "frechet/frechet_class.hpp"

#include <json.hpp>

namespace frechet {

using Json = nlohmann::ordered_json;

/// Support as an object {"bits": "value", ...} in reverse-lexicographic order.
Json pmf_json(const Pmf& pmf);
Json rat_array(std::span<const Rat> v);

/**
 * Summary of one member of the class: margins, sum distribution, stop-loss
 * at the integers, mean second moment, mean correlation, exclusivity order,
 * rank certificate, classification and polynomial image. Rationals are
 * strings.
 */
Json pmf_report(const Pmf& pmf);

}  // namespace frechet

#endif  // FRECHET_REPORT_HPP
