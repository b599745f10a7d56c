#include "padicfk/io_util.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace padicfk {

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    // %.17g round-trips every double; snprintf with the "C" numeric locale is
    // guaranteed here because the library never calls setlocale.
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

void append_escaped(std::string& out, const std::string& s) {
    out.push_back('"');
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                    out += buf;
                } else {
                    out.push_back(c);
                }
        }
    }
    out.push_back('"');
}

void dump_value(std::string& out, const Json& j, int depth) {
    const std::string pad(static_cast<size_t>(depth) * 2, ' ');
    const std::string pad_in(static_cast<size_t>(depth + 1) * 2, ' ');
    switch (j.type()) {
        case Json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            size_t i = 0;
            for (auto it = j.begin(); it != j.end(); ++it, ++i) {
                out += pad_in;
                append_escaped(out, it.key());
                out += ": ";
                dump_value(out, it.value(), depth + 1);
                if (i + 1 < j.size()) out.push_back(',');
                out.push_back('\n');
            }
            out += pad + "}";
            return;
        }
        case Json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            out += "[\n";
            for (size_t i = 0; i < j.size(); ++i) {
                out += pad_in;
                dump_value(out, j[i], depth + 1);
                if (i + 1 < j.size()) out.push_back(',');
                out.push_back('\n');
            }
            out += pad + "]";
            return;
        }
        case Json::value_t::string:
            append_escaped(out, j.get<std::string>());
            return;
        case Json::value_t::boolean:
            out += j.get<bool>() ? "true" : "false";
            return;
        case Json::value_t::number_integer:
            out += std::to_string(j.get<long long>());
            return;
        case Json::value_t::number_unsigned:
            out += std::to_string(j.get<unsigned long long>());
            return;
        case Json::value_t::number_float:
            out += format_double(j.get<double>());
            return;
        case Json::value_t::null:
        default:
            out += "null";
            return;
    }
}

} // namespace

std::string dump_json_pinned(const Json& j) {
    std::string out;
    dump_value(out, j, 0);
    out.push_back('\n');
    return out;
}

CsvBuilder::CsvBuilder(std::vector<std::string> header) : columns_(header.size()) {
    if (columns_ == 0) throw std::invalid_argument("CsvBuilder: header must be nonempty");
    for (size_t i = 0; i < header.size(); ++i) {
        if (i) out_.push_back(',');
        out_ += header[i];
    }
    out_.push_back('\n');
    row_fill_ = columns_;
}

void CsvBuilder::begin_row() {
    if (row_fill_ != columns_) throw std::logic_error("CsvBuilder: previous row is incomplete");
    row_fill_ = 0;
}

void CsvBuilder::add(const std::string& v) {
    if (row_fill_ >= columns_) throw std::logic_error("CsvBuilder: row overflow");
    if (row_fill_) out_.push_back(',');
    bool quote = v.find_first_of(",\"\n") != std::string::npos;
    if (quote) {
        out_.push_back('"');
        for (char c : v) {
            if (c == '"') out_.push_back('"');
            out_.push_back(c);
        }
        out_.push_back('"');
    } else {
        out_ += v;
    }
    if (++row_fill_ == columns_) out_.push_back('\n');
}

void CsvBuilder::add(double v) { add(format_double(v)); }

void CsvBuilder::add(long long v) { add(std::to_string(v)); }

std::string CsvBuilder::str() const {
    if (row_fill_ != columns_) throw std::logic_error("CsvBuilder: last row is incomplete");
    return out_;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!f) throw std::runtime_error("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for reading: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

} // namespace padicfk
