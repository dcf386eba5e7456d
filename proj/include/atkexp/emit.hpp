// Result emission: CSV with a fixed header and column order, or JSON with
// stable key order.  Numbers are printed with 17 significant digits so a
// parse round-trip is bit-exact.

#ifndef ATKEXP_EMIT_HPP
#define ATKEXP_EMIT_HPP

#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace atkexp::emit {

using Cell = std::variant<double, long long, std::string, bool>;

struct Report {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

std::string format_number(double v);  // %.17g

void write_csv(const Report& r, std::ostream& os);
void write_json(const Report& r, std::ostream& os);  // array of objects, key order = columns

enum class Format { csv, json };
void write(const Report& r, Format f, std::ostream& os);

}  // namespace atkexp::emit

#endif
