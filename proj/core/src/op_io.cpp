#include "potkit/op_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "potkit/errors.hpp"

namespace potkit {

namespace {

[[noreturn]] void fail(int line, const std::string& what) {
    throw IoError("operator file, line " + std::to_string(line) + ": " + what);
}

std::string strip(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

Rational parse_rational(const std::string& text, int line) {
    Rational q;
    if (text.empty() || q.set_str(text, 10) != 0) fail(line, "bad rational '" + text + "'");
    if (q.get_den() == 0) fail(line, "zero denominator in '" + text + "'");
    q.canonicalize();
    return q;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= s.size()) {
        auto pos = s.find(sep, start);
        if (pos == std::string::npos) pos = s.size();
        out.push_back(strip(s.substr(start, pos - start)));
        start = pos + 1;
    }
    return out;
}

}  // namespace

DiffOp parse_operator_text(const std::string& text) {
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;

    int n = -1, order = -1, dim_from = -1, dim_to = -1;
    DiffOp op;
    bool header_done = false;

    while (std::getline(in, raw)) {
        ++line_no;
        const std::string line = strip(raw);
        if (line.empty() || line[0] == '#') continue;

        if (line.rfind("term", 0) != 0) {
            const auto eq = line.find('=');
            if (eq == std::string::npos) fail(line_no, "expected key=value or term");
            const std::string key = strip(line.substr(0, eq));
            const std::string value = strip(line.substr(eq + 1));
            int parsed;
            try {
                parsed = std::stoi(value);
            } catch (...) {
                fail(line_no, "bad integer for " + key);
            }
            if (key == "n") n = parsed;
            else if (key == "order") order = parsed;
            else if (key == "dim_from") dim_from = parsed;
            else if (key == "dim_to") dim_to = parsed;
            else fail(line_no, "unknown header key '" + key + "'");
            continue;
        }

        if (!header_done) {
            if (n < 1 || order < 0 || dim_from < 1 || dim_to < 1)
                fail(line_no, "term before complete header (n, order, dim_from, dim_to)");
            op.n = n;
            op.order = order;
            op.dim_from = dim_from;
            op.dim_to = dim_to;
            header_done = true;
        }

        // term alpha=(a1,...,an): [[q, ...], ...]
        const auto alpha_pos = line.find("alpha=");
        const auto colon = line.find(':');
        if (alpha_pos == std::string::npos || colon == std::string::npos || colon < alpha_pos)
            fail(line_no, "malformed term line");
        const std::string alpha_text = strip(line.substr(alpha_pos + 6, colon - alpha_pos - 6));
        if (alpha_text.size() < 2 || alpha_text.front() != '(' || alpha_text.back() != ')')
            fail(line_no, "malformed multi-index");
        MultiIndex alpha(n);
        {
            const auto parts = split(alpha_text.substr(1, alpha_text.size() - 2), ',');
            if (static_cast<int>(parts.size()) != n) fail(line_no, "multi-index length != n");
            for (int i = 0; i < n; ++i) {
                try {
                    alpha[i] = std::stoi(parts[static_cast<std::size_t>(i)]);
                } catch (...) {
                    fail(line_no, "bad multi-index entry");
                }
                if (alpha[i] < 0) fail(line_no, "negative multi-index entry");
            }
        }
        if (alpha.degree() != order) fail(line_no, "|alpha| != order");

        std::string matrix_text = strip(line.substr(colon + 1));
        if (matrix_text.size() < 4 || matrix_text.substr(0, 2) != "[[" ||
            matrix_text.substr(matrix_text.size() - 2) != "]]")
            fail(line_no, "malformed coefficient matrix");
        matrix_text = matrix_text.substr(2, matrix_text.size() - 4);
        std::vector<std::string> rows;
        {
            std::size_t start = 0;
            while (true) {
                const auto sep = matrix_text.find("],", start);
                if (sep == std::string::npos) {
                    rows.push_back(matrix_text.substr(start));
                    break;
                }
                rows.push_back(matrix_text.substr(start, sep - start));
                start = matrix_text.find('[', sep);
                if (start == std::string::npos) fail(line_no, "malformed matrix rows");
                ++start;
            }
        }
        if (static_cast<int>(rows.size()) != dim_to) fail(line_no, "matrix must have dim_to rows");
        RatMatrix coeff(dim_to, dim_from);
        for (int i = 0; i < dim_to; ++i) {
            const auto entries = split(rows[static_cast<std::size_t>(i)], ',');
            if (static_cast<int>(entries.size()) != dim_from)
                fail(line_no, "matrix row must have dim_from entries");
            for (int j = 0; j < dim_from; ++j)
                coeff.at(i, j) = parse_rational(entries[static_cast<std::size_t>(j)], line_no);
        }
        try {
            op.add_coeff(alpha, coeff);
        } catch (const std::exception& e) {
            fail(line_no, e.what());
        }
    }

    if (!header_done) {
        if (n < 1 || order < 0 || dim_from < 1 || dim_to < 1)
            throw IoError("operator file: incomplete header");
        op.n = n;
        op.order = order;
        op.dim_from = dim_from;
        op.dim_to = dim_to;
    }
    return op;
}

std::string write_operator_text(const DiffOp& op) {
    std::string out;
    out += "n=" + std::to_string(op.n) + "\n";
    out += "order=" + std::to_string(op.order) + "\n";
    out += "dim_from=" + std::to_string(op.dim_from) + "\n";
    out += "dim_to=" + std::to_string(op.dim_to) + "\n";
    for (const auto& [alpha, m] : op.coeffs) {
        out += "term alpha=" + alpha.to_string() + ": [";
        for (int i = 0; i < op.dim_to; ++i) {
            out += "[";
            for (int j = 0; j < op.dim_from; ++j) {
                if (j) out += ", ";
                out += to_string(m.at(i, j));
            }
            out += "]";
            if (i + 1 < op.dim_to) out += ", ";
        }
        out += "]\n";
    }
    return out;
}

DiffOp read_operator_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open operator file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_operator_text(buf.str());
}

void write_operator_file(const DiffOp& op, const std::string& path) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw IoError("cannot write operator file: " + path);
        out << write_operator_text(op);
        if (!out) throw IoError("short write to operator file: " + path);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw IoError("cannot move operator file into place: " + path);
}

}  // namespace potkit
