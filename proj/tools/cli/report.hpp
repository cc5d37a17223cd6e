#pragma once

#include <cubehom/rational.hpp>

#include <json.hpp>

#include <string>
#include <vector>

namespace cubehom::cli
{
    using Json = nlohmann::ordered_json;

    enum class Format
    {
        text,
        json
    };

    /// Exact value as "num/den".
    auto exact(const Rational & r) -> Json;
    auto exact(const BigInt & n) -> Json;
    /// 12 significant digits.
    auto decimal(const Rational & r) -> Json;
    /// Shortest round-trip representation of a double.
    auto decimal(double x) -> Json;

    /// Median of a non-empty list (mean of the middle two for even sizes).
    auto median(std::vector<Rational> values) -> Rational;

    /// {"tool", "version", "command"} header shared by all reports.
    auto report_header(const std::vector<std::string> & args) -> Json;

    /// JSON is pretty-printed with two spaces; text is an indented
    /// "key: value" listing of the same tree.
    auto render(const Json & report, Format format) -> std::string;
}
