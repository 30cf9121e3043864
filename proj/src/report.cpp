#include "frechet/report.hpp"

#include "frechet/convex_order.hpp"
#include "frechet/poly_ideal.hpp"

namespace frechet {

Json pmf_json(const Pmf& pmf) {
    Json out = Json::object();
    for (const auto& [x, m] : pmf.support()) out[x.str()] = m.str();
    return out;
}

Json rat_array(std::span<const Rat> v) {
    Json out = Json::array();
    for (const Rat& r : v) out.push_back(r.str());
    return out;
}

Json pmf_report(const Pmf& pmf) {
    const FrechetClass& cls = pmf.cls();
    const SumPmf s = sum_pmf(pmf);
    const ExtremalCertificate cert = is_extremal(pmf);

    Json stop = Json::object();
    for (std::size_t l = 0; l <= cls.d(); ++l) stop[std::to_string(l)] = stop_loss(s, Rat(static_cast<long>(l))).str();

    Json j;
    j["class"] = {{"d", cls.d()}, {"p", cls.p().str()}};
    j["support_size"] = pmf.support_size();
    j["margins"] = rat_array(margins(cls.d(), pmf.support()));
    j["sum_pmf"] = rat_array(s.probs);
    j["stop_loss"] = stop;
    j["mean_second_moment"] = mean_second_moment(s).str();
    j["mean_correlation"] = mean_correlation(pmf).str();
    j["exclusivity_order"] = exclusivity_order(pmf);
    j["certificate"] = {{"extremal", cert.is_extremal},
                        {"rank_found", cert.rank_found.get_str()},
                        {"rank_required", cert.rank_required.get_str()}};
    j["classification"] = to_string(classify_pmf(pmf));
    j["polynomial"] = pmf_to_poly(pmf).str();
    return j;
}

}  // namespace frechet
