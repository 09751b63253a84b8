#include "mgmt/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "mgmt/common.hpp"

namespace mgmt::csv {

std::vector<std::vector<std::string>> parse(const std::string& text,
                                            const std::string& origin) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> row;
    std::string field;
    bool in_quotes = false;
    bool field_started = false;
    std::size_t line = 1;

    auto end_field = [&] {
        row.push_back(field);
        field.clear();
        field_started = false;
    };
    auto end_row = [&] {
        if (field_started || !field.empty() || !row.empty()) {
            end_field();
            rows.push_back(row);
            row.clear();
        }
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                field += c;
                if (c == '\n') ++line;
            }
        } else if (c == '"' && field.empty()) {
            in_quotes = true;
            field_started = true;
        } else if (c == ',') {
            end_field();
            field_started = true; // next field exists even if empty
        } else if (c == '\n') {
            if (!field.empty() && field.back() == '\r') field.pop_back();
            end_row();
            ++line;
        } else {
            field += c;
            field_started = true;
        }
    }
    if (in_quotes)
        throw DataError(origin + ": unterminated quoted field at line " + std::to_string(line));
    if (!field.empty() && field.back() == '\r') field.pop_back();
    end_row();
    return rows;
}

std::vector<std::vector<std::string>> read_file(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw DataError("cannot open " + path.string());
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse(ss.str(), path.string());
}

void write_row(std::ostream& os, const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) os << ',';
        const std::string& s = fields[i];
        if (s.find_first_of(",\"\n\r") != std::string::npos) {
            os << '"';
            for (char c : s) {
                if (c == '"') os << "\"\"";
                else os << c;
            }
            os << '"';
        } else {
            os << s;
        }
    }
    os << '\n';
}

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v,
                             std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

double parse_double(const std::string& s, const std::string& where) {
    double v = 0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    while (first != last && (*first == ' ' || *first == '\t')) ++first;
    auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc() || res.ptr != last)
        throw DataError(where + ": not a number: '" + s + "'");
    return v;
}

long long parse_int(const std::string& s, const std::string& where) {
    long long v = 0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw DataError(where + ": not an integer: '" + s + "'");
    return v;
}

} // namespace mgmt::csv
