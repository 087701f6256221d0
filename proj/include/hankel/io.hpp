#pragma once

// JSON records for Cpswf (versioned, round-trippable) and BoundReport (one
// object per line). Non-finite doubles are written as null.

#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

#include <json.hpp>

#include "hankel/bounds.hpp"
#include "hankel/cpswf.hpp"
#include "hankel/errors.hpp"

namespace hankel {

inline constexpr int cpswf_json_version = 1;

namespace detail {

inline nlohmann::json finite_or_null(double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); }

inline double number_or_nan(const nlohmann::json& j) {
    return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
}

} // namespace detail

inline nlohmann::json to_json(const Cpswf& f) {
    nlohmann::json j;
    j["version"] = cpswf_json_version;
    j["n"] = f.n;
    j["alpha"] = f.alpha;
    j["c"] = f.c;
    j["chi"] = f.chi;
    j["mu"] = detail::finite_or_null(f.mu);
    j["lambda"] = detail::finite_or_null(f.lambda);
    j["log_lambda"] = detail::finite_or_null(f.log_lambda);
    j["log_abs_mu"] = detail::finite_or_null(f.log_abs_mu);
    j["one_minus_lambda"] = detail::finite_or_null(f.one_minus_lambda);
    j["coeffs"] = f.coeffs;
    return j;
}

inline Cpswf cpswf_from_json(const nlohmann::json& j) {
    if (!j.contains("version") || j["version"].get<int>() != cpswf_json_version)
        throw DomainError("cpswf_from_json: unsupported record version");
    Cpswf f;
    f.n = j.at("n").get<int>();
    f.alpha = j.at("alpha").get<double>();
    f.c = j.at("c").get<double>();
    f.chi = j.at("chi").get<double>();
    f.mu = detail::number_or_nan(j.at("mu"));
    f.lambda = detail::number_or_nan(j.at("lambda"));
    f.log_lambda = detail::number_or_nan(j.at("log_lambda"));
    f.log_abs_mu = j.contains("log_abs_mu") ? detail::number_or_nan(j["log_abs_mu"]) : std::log(std::abs(f.mu));
    f.one_minus_lambda = j.contains("one_minus_lambda") ? detail::number_or_nan(j["one_minus_lambda"]) : 1.0 - f.lambda;
    f.coeffs = j.at("coeffs").get<std::vector<double>>();
    return f;
}

inline nlohmann::json to_json(const BoundReport& r) {
    nlohmann::json j;
    j["claim"] = r.claim_id;
    j["alpha"] = r.alpha;
    j["c"] = r.c;
    j["n"] = r.n >= 0 ? nlohmann::json(r.n) : nlohmann::json(nullptr);
    j["hypotheses_met"] = r.hypotheses_met;
    j["measured"] = detail::finite_or_null(r.measured);
    j["bound"] = detail::finite_or_null(r.bound);
    if (std::isfinite(r.lower)) j["lower"] = r.lower;
    j["margin"] = detail::finite_or_null(r.margin);
    j["pass"] = r.pass;
    return j;
}

/// %.15e, the fixed format of every float the CLI writes.
inline std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.15e", v);
    return buf;
}

} // namespace hankel
