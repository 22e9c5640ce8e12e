#ifndef REEBKIT_REPORT_HPP
#define REEBKIT_REPORT_HPP

#include <cstdint>
#include <cstdio>
#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

// Minimal ordered JSON value with a deterministic writer: object keys keep
// insertion order and floating-point values are always printed with %.17g,
// so identical runs produce byte-identical report files.

namespace reebkit {

class Report {
public:
    using Array = std::vector<Report>;
    using Object = std::vector<std::pair<std::string, Report>>;

    Report() : value_(nullptr) {}
    Report(std::nullptr_t) : value_(nullptr) {}
    Report(bool b) : value_(b) {}
    Report(int v) : value_(static_cast<std::int64_t>(v)) {}
    Report(std::int64_t v) : value_(v) {}
    Report(std::uint64_t v) : value_(static_cast<std::int64_t>(v)) {}
    Report(double v) : value_(v) {}
    Report(const char* s) : value_(std::string(s)) {}
    Report(std::string s) : value_(std::move(s)) {}

    static Report object() {
        Report r;
        r.value_ = Object{};
        return r;
    }
    static Report array() {
        Report r;
        r.value_ = Array{};
        return r;
    }

    Report& set(const std::string& key, Report v) {
        std::get<Object>(value_).emplace_back(key, std::move(v));
        return *this;
    }
    Report& push(Report v) {
        std::get<Array>(value_).push_back(std::move(v));
        return *this;
    }

    std::string dump(int indent = 2) const {
        std::string out;
        write(out, indent, 0);
        out.push_back('\n');
        return out;
    }

private:
    static void escape(std::string& out, const std::string& s) {
        out.push_back('"');
        for (char c : s) {
            switch (c) {
                case '"': out += "\\\""; break;
                case '\\': out += "\\\\"; break;
                case '\n': out += "\\n"; break;
                case '\t': out += "\\t"; break;
                case '\r': out += "\\r"; break;
                default:
                    if (static_cast<unsigned char>(c) < 0x20) {
                        char buf[8];
                        std::snprintf(buf, sizeof buf, "\\u%04x", c);
                        out += buf;
                    } else {
                        out.push_back(c);
                    }
            }
        }
        out.push_back('"');
    }

    void write(std::string& out, int indent, int depth) const {
        const std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
        const std::string pad_close(static_cast<std::size_t>(indent * depth), ' ');
        if (std::holds_alternative<std::nullptr_t>(value_)) {
            out += "null";
        } else if (const bool* b = std::get_if<bool>(&value_)) {
            out += *b ? "true" : "false";
        } else if (const std::int64_t* i = std::get_if<std::int64_t>(&value_)) {
            out += std::to_string(*i);
        } else if (const double* d = std::get_if<double>(&value_)) {
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.17g", *d);
            out += buf;
        } else if (const std::string* s = std::get_if<std::string>(&value_)) {
            escape(out, *s);
        } else if (const Array* a = std::get_if<Array>(&value_)) {
            if (a->empty()) {
                out += "[]";
                return;
            }
            out += "[\n";
            for (std::size_t i = 0; i < a->size(); ++i) {
                out += pad;
                (*a)[i].write(out, indent, depth + 1);
                if (i + 1 < a->size()) out += ",";
                out += "\n";
            }
            out += pad_close + "]";
        } else if (const Object* o = std::get_if<Object>(&value_)) {
            if (o->empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            for (std::size_t i = 0; i < o->size(); ++i) {
                out += pad;
                escape(out, (*o)[i].first);
                out += ": ";
                (*o)[i].second.write(out, indent, depth + 1);
                if (i + 1 < o->size()) out += ",";
                out += "\n";
            }
            out += pad_close + "}";
        }
    }

    std::variant<std::nullptr_t, bool, std::int64_t, double, std::string, Array, Object> value_;
};

} // namespace reebkit

#endif // REEBKIT_REPORT_HPP
