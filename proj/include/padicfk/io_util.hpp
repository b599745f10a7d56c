#pragma once

#include <json.hpp>

#include <string>
#include <vector>

namespace padicfk {

using Json = nlohmann::ordered_json;

// Pinned float rendering: %.17g, C locale, used for every float that reaches
// an output file so that runs are byte-comparable.
std::string format_double(double v);

// Serializes with format_double applied to every number so files carry the
// pinned rendering; indent = 2, trailing newline.
std::string dump_json_pinned(const Json& j);

class CsvBuilder {
public:
    explicit CsvBuilder(std::vector<std::string> header);

    void begin_row();
    void add(const std::string& v);
    void add(double v);
    void add(long long v);
    std::string str() const;

private:
    size_t columns_;
    size_t row_fill_ = 0;
    std::string out_;
};

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

} // namespace padicfk
