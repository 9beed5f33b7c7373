#include "randsvd/dmat.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <vector>

#include "randsvd/errors.hpp"

namespace randsvd {

namespace {

constexpr char kMagic[6] = {'D', 'M', 'A', 'T', '1', '\n'};

void put_u64_le(std::ostream& out, std::uint64_t v) {
    char buf[8];
    for (int i = 0; i < 8; ++i) buf[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
    out.write(buf, 8);
}

std::uint64_t get_u64_le(const char* buf) {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i)
        v |= static_cast<std::uint64_t>(static_cast<unsigned char>(buf[i])) << (8 * i);
    return v;
}

}  // namespace

DenseMatrix read_dmat(std::istream& in, const std::string& name) {
    char magic[6];
    in.read(magic, 6);
    if (in.gcount() != 6 || std::memcmp(magic, kMagic, 6) != 0)
        throw IoError("bad DMAT magic in " + name + " at byte offset 0", name, 0);

    char header[16];
    in.read(header, 16);
    if (in.gcount() != 16)
        throw IoError("truncated DMAT header in " + name + " at byte offset " +
                          std::to_string(6 + in.gcount()),
                      name, 6 + static_cast<std::uint64_t>(in.gcount()));
    const std::uint64_t rows = get_u64_le(header);
    const std::uint64_t cols = get_u64_le(header + 8);
    if (rows == 0 || cols == 0 || rows > (1ULL << 32) || cols > (1ULL << 32))
        throw IoError("implausible DMAT dimensions " + std::to_string(rows) + "x" +
                          std::to_string(cols) + " in " + name,
                      name, 6);

    const std::uint64_t count = rows * cols;
    std::vector<double> data(count);
    std::vector<char> raw(count * 8);
    in.read(raw.data(), static_cast<std::streamsize>(raw.size()));
    if (static_cast<std::uint64_t>(in.gcount()) != raw.size()) {
        const std::uint64_t off = 22 + static_cast<std::uint64_t>(in.gcount());
        throw IoError("truncated DMAT payload in " + name + " at byte offset " +
                          std::to_string(off) + " (expected " +
                          std::to_string(22 + raw.size()) + " bytes total)",
                      name, off);
    }
    for (std::uint64_t i = 0; i < count; ++i)
        data[i] = std::bit_cast<double>(get_u64_le(raw.data() + i * 8));

    if (in.peek() != std::char_traits<char>::eof())
        throw IoError("trailing bytes in " + name + " after byte offset " +
                          std::to_string(22 + raw.size()),
                      name, 22 + raw.size());

    return DenseMatrix(rows, cols, std::move(data));
}

void write_dmat(std::ostream& out, const DenseMatrix& m, const std::string& name) {
    out.write(kMagic, 6);
    put_u64_le(out, m.rows());
    put_u64_le(out, m.cols());
    std::vector<char> raw(m.size() * 8);
    for (std::size_t i = 0; i < m.size(); ++i) {
        const std::uint64_t bits = std::bit_cast<std::uint64_t>(m.data()[i]);
        for (int b = 0; b < 8; ++b)
            raw[i * 8 + b] = static_cast<char>((bits >> (8 * b)) & 0xFF);
    }
    out.write(raw.data(), static_cast<std::streamsize>(raw.size()));
    if (!out) throw IoError("write failure on " + name, name, 0);
}

DenseMatrix read_dmat(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path, path, 0);
    return read_dmat(in, path);
}

void write_dmat(const std::string& path, const DenseMatrix& m) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot create " + path, path, 0);
    write_dmat(out, m, path);
}

}  // namespace randsvd
