#include "erg/report.hpp"

#include <charconv>

namespace erg {

using nlohmann::ordered_json;

std::string format_rational(Rational r) {
    if (r.denominator() == 1) {
        return std::to_string(r.numerator());
    }
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

namespace {

std::int64_t parse_int(std::string_view s) {
    std::int64_t value = 0;
    const auto* end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(s.data(), end, value);
    if (s.empty() || ec != std::errc() || ptr != end) {
        throw InputError("'" + std::string(s) + "' is not an integer");
    }
    return value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    if (const auto slash = text.find('/'); slash != std::string_view::npos) {
        const auto den = parse_int(text.substr(slash + 1));
        if (den == 0) {
            throw InputError("zero denominator in '" + std::string(text) + "'");
        }
        return Rational(parse_int(text.substr(0, slash)), den);
    }
    if (const auto dot = text.find('.'); dot != std::string_view::npos) {
        bool negative = !text.empty() && text.front() == '-';
        auto whole = text.substr(0, dot);
        const auto frac = text.substr(dot + 1);
        if (frac.size() > 15 || frac.find_first_not_of("0123456789") != std::string_view::npos) {
            throw InputError("cannot read '" + std::string(text) + "' as a number");
        }
        if (negative) {
            whole.remove_prefix(1);
        }
        std::int64_t den = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) {
            den *= 10;
        }
        const std::int64_t w = whole.empty() ? 0 : parse_int(whole);
        const std::int64_t f = frac.empty() ? 0 : parse_int(frac);
        if (whole.empty() && frac.empty()) {
            throw InputError("cannot read '" + std::string(text) + "' as a number");
        }
        Rational r(w * den + f, den);
        return negative ? -r : r;
    }
    return Rational(parse_int(text));
}

double to_double(Rational r) { return boost::rational_cast<double>(r); }

ordered_json to_json(const QueryCounts& q) {
    return {{"degree", q.degree}, {"neighbor", q.neighbor}};
}

ordered_json to_json(const TesterVerdict& v) {
    ordered_json j;
    j["algorithm"] = v.algorithm;
    j["verdict"] = to_string(v.verdict);
    if (v.witness) {
        ordered_json w{{"kind", to_string(v.witness->kind)}, {"vertices", v.witness->vertices}};
        w["anchor"] = v.witness->anchor ? ordered_json(*v.witness->anchor) : ordered_json(nullptr);
        j["witness"] = std::move(w);
    } else {
        j["witness"] = nullptr;
    }
    j["queries"] = to_json(v.queries);
    if (v.cap) {
        const char* scope = v.cap->scope == BudgetScope::Total    ? "total"
                            : v.cap->scope == BudgetScope::Degree ? "degree"
                                                                  : "neighbor";
        j["cap"] = {{"scope", scope}, {"limit", v.cap->cap}};
    } else {
        j["cap"] = nullptr;
    }
    j["aborted"] = v.aborted;
    j["seed"] = v.seed;
    ordered_json params{{"epsilon", v.params.epsilon}, {"alpha", v.params.alpha}};
    params["davg"] = v.params.davg ? ordered_json(*v.params.davg) : ordered_json(nullptr);
    j["params"] = std::move(params);
    return j;
}

ordered_json to_json(const DegreeEstimate& e) {
    ordered_json j;
    j["value"] = e.value;
    j["iteration"] = e.iteration ? ordered_json(*e.iteration) : ordered_json(nullptr);
    j["crude_used"] = e.crude_used;
    j["samples"] = e.samples;
    j["queries"] = to_json(e.queries);
    j["seed"] = e.seed;
    j["conforming"] = e.conforming;
    return j;
}

ordered_json to_json(const WitnessInventory& inv) {
    ordered_json gen = ordered_json::array();
    for (const auto& w : inv.generalized) {
        gen.push_back({{"vertices", w.vertices}, {"anchors", w.anchors}});
    }
    return {{"plain_witnesses", inv.plain}, {"generalized_witnesses", std::move(gen)}};
}

ordered_json to_json(const ExactReport& r) {
    ordered_json j;
    j["completions_count"] = r.completions_count;
    j["completions_partial"] = r.completions_partial;
    j["min_components_over_completions"] = r.min_components;
    j["distance_to_connectedness"] =
        r.distance ? ordered_json(format_rational(*r.distance)) : ordered_json(nullptr);
    const auto inv = to_json(r.witnesses);
    j["plain_witnesses"] = inv["plain_witnesses"];
    j["generalized_witnesses"] = inv["generalized_witnesses"];
    if (r.exp_chi) {
        j["exp_chi"] = format_rational(*r.exp_chi);
        j["d_hat"] = *r.d_hat;
        j["eps"] = r.eps;
    } else {
        j["exp_chi"] = nullptr;
    }
    return j;
}

}  // namespace erg
