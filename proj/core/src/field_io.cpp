#include "potkit/field_io.hpp"

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>

#include "potkit/errors.hpp"

namespace potkit {

namespace {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

[[noreturn]] void fail(int line, const std::string& what) {
    throw IoError("field file, line " + std::to_string(line) + ": " + what);
}

}  // namespace

std::string write_field_text(const TorusField& field) {
    std::string out = "AFIELD 1\n";
    out += "n=" + std::to_string(field.n()) + " d=" + std::to_string(field.d()) +
           " shape=" + std::to_string(field.m()) + " real=" + (field.real_flag() ? "1" : "0") +
           "\n";

    // Signed tuples in lexicographic order.
    const Lattice lat = field.lattice();
    std::map<std::vector<int>, std::size_t> order;
    std::vector<int> idx(static_cast<std::size_t>(field.n()));
    const std::size_t np = field.points();
    for (std::size_t p = 0; p < np; ++p) {
        lat.unflatten(p, idx);
        std::vector<int> signed_xi(idx.size());
        for (std::size_t i = 0; i < idx.size(); ++i) signed_xi[i] = lat.signed_freq(idx[i]);
        order.emplace(std::move(signed_xi), p);
    }
    for (const auto& [xi, p] : order) {
        bool nonzero = false;
        for (int c = 0; c < field.d(); ++c)
            nonzero = nonzero || field.at(p, c) != std::complex<double>{0.0, 0.0};
        if (!nonzero) continue;
        out += "xi=(";
        for (std::size_t i = 0; i < xi.size(); ++i) {
            if (i) out += ",";
            out += std::to_string(xi[i]);
        }
        out += "):";
        for (int c = 0; c < field.d(); ++c) {
            const auto z = field.at(p, c);
            out += " (" + format_double(z.real()) + "," + format_double(z.imag()) + ")";
        }
        out += "\n";
    }
    return out;
}

TorusField parse_field_text(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int line_no = 0;

    if (!std::getline(in, line)) throw IoError("field file: empty input");
    ++line_no;
    if (line != "AFIELD 1") fail(line_no, "expected header 'AFIELD 1'");

    if (!std::getline(in, line)) throw IoError("field file: missing shape line");
    ++line_no;
    int n = -1, d = -1, m = -1, real = -1;
    if (std::sscanf(line.c_str(), "n=%d d=%d shape=%d real=%d", &n, &d, &m, &real) != 4)
        fail(line_no, "expected 'n=.. d=.. shape=.. real=..'");
    if (n < 1 || d < 1 || m < 1 || (real != 0 && real != 1)) fail(line_no, "bad shape values");

    TorusField field(n, d, m, real == 1);
    const Lattice lat = field.lattice();
    std::vector<int> xi(static_cast<std::size_t>(n));
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        const char* cur = line.c_str();
        if (std::strncmp(cur, "xi=(", 4) != 0) fail(line_no, "expected 'xi=(' entry");
        cur += 4;
        for (int i = 0; i < n; ++i) {
            char* end = nullptr;
            xi[static_cast<std::size_t>(i)] = static_cast<int>(std::strtol(cur, &end, 10));
            if (end == cur) fail(line_no, "bad frequency tuple");
            cur = end;
            if (*cur == ',') ++cur;
        }
        if (*cur != ')') fail(line_no, "unterminated frequency tuple");
        ++cur;
        if (*cur != ':') fail(line_no, "expected ':' after frequency");
        ++cur;
        for (int i = 0; i < n; ++i) {
            const int s = xi[static_cast<std::size_t>(i)];
            const int lo = -(m - 1) / 2, hi = m / 2;
            if (s < lo || s > hi) fail(line_no, "frequency outside the lattice");
        }
        const std::size_t p = lat.flatten(xi);
        for (int c = 0; c < d; ++c) {
            while (*cur == ' ') ++cur;
            if (*cur != '(') fail(line_no, "expected '(re,im)' pair");
            ++cur;
            char* end = nullptr;
            const double re = std::strtod(cur, &end);
            if (end == cur || *end != ',') fail(line_no, "bad real part");
            cur = end + 1;
            const double im = std::strtod(cur, &end);
            if (end == cur || *end != ')') fail(line_no, "bad imaginary part");
            cur = end + 1;
            field.at(p, c) = {re, im};
        }
    }
    return field;
}

namespace {

constexpr char kBinaryMagic[] = "AFIELDB1\n";
constexpr std::size_t kBinaryMagicLen = sizeof kBinaryMagic - 1;

void write_i32(std::string& out, std::int32_t v) {
    for (int b = 0; b < 4; ++b) out.push_back(static_cast<char>((v >> (8 * b)) & 0xff));
}

std::int32_t read_i32(const std::string& in, std::size_t& pos) {
    if (pos + 4 > in.size()) throw IoError("field file: truncated binary header");
    std::int32_t v = 0;
    for (int b = 0; b < 4; ++b)
        v |= static_cast<std::int32_t>(static_cast<unsigned char>(in[pos++])) << (8 * b);
    return v;
}

std::string write_field_binary(const TorusField& field) {
    std::string out(kBinaryMagic, kBinaryMagicLen);
    write_i32(out, field.n());
    write_i32(out, field.d());
    write_i32(out, field.m());
    write_i32(out, field.real_flag() ? 1 : 0);
    const auto* raw = reinterpret_cast<const char*>(field.data().data());
    out.append(raw, field.data().size() * sizeof(std::complex<double>));
    return out;
}

TorusField parse_field_binary(const std::string& text) {
    std::size_t pos = kBinaryMagicLen;
    const std::int32_t n = read_i32(text, pos);
    const std::int32_t d = read_i32(text, pos);
    const std::int32_t m = read_i32(text, pos);
    const std::int32_t real = read_i32(text, pos);
    if (n < 1 || d < 1 || m < 1 || (real != 0 && real != 1))
        throw IoError("field file: bad binary shape values");
    TorusField field(n, d, m, real == 1);
    const std::size_t payload = field.data().size() * sizeof(std::complex<double>);
    if (text.size() - pos != payload) throw IoError("field file: binary payload size mismatch");
    std::memcpy(field.data().data(), text.data() + pos, payload);
    return field;
}

}  // namespace

namespace {

// Real-flagged fields must be Hermitian; tolerate only rounding-scale defects.
void check_real_flag(const TorusField& field) {
    if (!field.real_flag()) return;
    double scale = 1.0;
    for (const auto& z : field.data()) scale = std::max(scale, std::abs(z));
    if (field.hermitian_defect() > 1e-12 * scale)
        throw IoError("field file: real=1 but coefficients are not Hermitian");
}

}  // namespace

TorusField read_field_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open field file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    TorusField field =
        text.rfind(kBinaryMagic, 0) == 0 ? parse_field_binary(text) : parse_field_text(text);
    check_real_flag(field);
    return field;
}

void write_field_file(const TorusField& field, const std::string& path, bool binary) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw IoError("cannot write field file: " + path);
        out << (binary ? write_field_binary(field) : write_field_text(field));
        if (!out) throw IoError("short write to field file: " + path);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw IoError("cannot move field file into place: " + path);
}

}  // namespace potkit
