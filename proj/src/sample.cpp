#include "adr/sample.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "adr/error.hpp"

namespace adr {

FrequencySample FrequencySample::from_values(const std::vector<uint64_t> &values) {
    std::map<uint64_t, uint64_t> counts;
    for (uint64_t v : values) counts[v] += 1;
    FrequencySample sample;
    sample.bins_.assign(counts.begin(), counts.end());
    sample.n_ = values.size();
    return sample;
}

double FrequencySample::mean() const {
    if (n_ == 0)
        throw_error(ErrorKind::Empty, "mean of empty sample");
    double sum = 0.0;
    for (const auto &[value, count] : bins_)
        sum += static_cast<double>(value) * static_cast<double>(count);
    return sum / static_cast<double>(n_);
}

void FrequencySample::save(const std::string &path) const {
    std::ofstream out(path, std::ios::trunc);
    if (!out)
        throw_error(ErrorKind::Io, "cannot open sample file for writing: " + path);
    for (const auto &[value, count] : bins_)
        out << value << ' ' << count << '\n';
    out.flush();
    if (!out)
        throw_error(ErrorKind::Io, "failed writing sample file: " + path);
}

FrequencySample FrequencySample::load(const std::string &path) {
    std::ifstream in(path);
    if (!in)
        throw_error(ErrorKind::Io, "cannot open sample file: " + path);
    FrequencySample sample;
    std::string line;
    size_t line_no = 0;
    uint64_t prev = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::istringstream fields(line);
        uint64_t value = 0, count = 0;
        if (!(fields >> value >> count) || count == 0)
            throw_error(ErrorKind::Format,
                        path + ":" + std::to_string(line_no) +
                            ": expected `value count`");
        if (!sample.bins_.empty() && value <= prev)
            throw_error(ErrorKind::Format,
                        path + ":" + std::to_string(line_no) +
                            ": values must be strictly ascending");
        prev = value;
        sample.bins_.emplace_back(value, count);
        sample.n_ += count;
    }
    return sample;
}

} // namespace adr
