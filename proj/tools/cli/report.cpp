#include <cli/report.hpp>

#include <algorithm>
#include <charconv>
#include <sstream>

namespace cubehom::cli
{
    auto exact(const Rational & r) -> Json { return to_fraction_string(r); }
    auto exact(const BigInt & n) -> Json { return to_string(n); }
    auto decimal(const Rational & r) -> Json { return to_decimal_string(r, 12); }

    auto decimal(double x) -> Json
    {
        char buf[64];
        auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
        (void) ec;
        return std::string(buf, end);
    }

    auto median(std::vector<Rational> values) -> Rational
    {
        std::sort(values.begin(), values.end());
        auto n = values.size();
        if (n % 2 == 1)
            return values[n / 2];
        return (values[n / 2 - 1] + values[n / 2]) / 2;
    }

    auto report_header(const std::vector<std::string> & args) -> Json
    {
        std::string command = "cubehom";
        for (auto & a : args)
            command += " " + a;
        Json j;
        j["tool"] = "cubehom";
        j["version"] = CUBEHOM_VERSION;
        j["command"] = command;
        return j;
    }

    namespace
    {
        auto scalar(const Json & j) -> std::string
        {
            if (j.is_string())
                return j.get<std::string>();
            if (j.is_null())
                return "none";
            return j.dump();
        }

        auto is_flat(const Json & j) -> bool
        {
            return j.is_array() && std::all_of(j.begin(), j.end(), [](const Json & x) { return x.is_primitive(); });
        }

        void emit(std::ostringstream & out, const Json & j, int indent);

        void emit_value(std::ostringstream & out, const std::string & prefix, const Json & v, int indent)
        {
            std::string pad(static_cast<std::size_t>(indent), ' ');
            if (v.is_primitive())
                out << pad << prefix << scalar(v) << "\n";
            else if (is_flat(v)) {
                out << pad << prefix << "[";
                bool first = true;
                for (auto & x : v) {
                    out << (first ? "" : ", ") << scalar(x);
                    first = false;
                }
                out << "]\n";
            }
            else if (v.empty())
                out << pad << prefix << (v.is_array() ? "[]" : "{}") << "\n";
            else {
                out << pad << prefix << "\n";
                emit(out, v, indent + 2);
            }
        }

        void emit(std::ostringstream & out, const Json & j, int indent)
        {
            std::string pad(static_cast<std::size_t>(indent), ' ');
            if (j.is_object())
                for (auto & [key, v] : j.items())
                    emit_value(out, key + ": ", v, indent);
            else if (j.is_array())
                for (auto & item : j) {
                    if (item.is_object() && ! item.empty()) {
                        bool first = true;
                        for (auto & [key, v] : item.items()) {
                            if (first)
                                emit_value(out, "- " + key + ": ", v, indent);
                            else
                                emit_value(out, key + ": ", v, indent + 2);
                            first = false;
                        }
                    }
                    else
                        emit_value(out, "- ", item, indent);
                }
            else
                out << pad << scalar(j) << "\n";
        }
    }

    auto render(const Json & report, Format format) -> std::string
    {
        if (format == Format::json)
            return report.dump(2) + "\n";
        std::ostringstream out;
        emit(out, report, 0);
        return out.str();
    }
}
