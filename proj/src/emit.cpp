#include "atkexp/emit.hpp"

#include <cstdio>
#include <stdexcept>

#include "json.hpp"

namespace atkexp::emit {

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += '"';
    return out;
}

std::string cell_to_string(const Cell& c) {
    if (std::holds_alternative<double>(c)) return format_number(std::get<double>(c));
    if (std::holds_alternative<long long>(c)) return std::to_string(std::get<long long>(c));
    if (std::holds_alternative<bool>(c)) return std::get<bool>(c) ? "true" : "false";
    return std::get<std::string>(c);
}

}  // namespace

void write_csv(const Report& r, std::ostream& os) {
    for (std::size_t i = 0; i < r.columns.size(); ++i)
        os << (i ? "," : "") << csv_escape(r.columns[i]);
    os << '\n';
    for (const auto& row : r.rows) {
        if (row.size() != r.columns.size())
            throw std::invalid_argument("write_csv: ragged row");
        for (std::size_t i = 0; i < row.size(); ++i)
            os << (i ? "," : "") << csv_escape(cell_to_string(row[i]));
        os << '\n';
    }
}

void write_json(const Report& r, std::ostream& os) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& row : r.rows) {
        if (row.size() != r.columns.size())
            throw std::invalid_argument("write_json: ragged row");
        nlohmann::ordered_json obj;
        for (std::size_t i = 0; i < row.size(); ++i) {
            const Cell& c = row[i];
            if (std::holds_alternative<double>(c)) obj[r.columns[i]] = std::get<double>(c);
            else if (std::holds_alternative<long long>(c)) obj[r.columns[i]] = std::get<long long>(c);
            else if (std::holds_alternative<bool>(c)) obj[r.columns[i]] = std::get<bool>(c);
            else obj[r.columns[i]] = std::get<std::string>(c);
        }
        arr.push_back(std::move(obj));
    }
    os << arr.dump(2) << '\n';
}

void write(const Report& r, Format f, std::ostream& os) {
    if (f == Format::csv) write_csv(r, os);
    else write_json(r, os);
}

}  // namespace atkexp::emit
