#include "frechet/pmf_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace frechet {

std::map<Bits, Rat> read_mass(std::istream& in) {
    std::map<Bits, Rat> mass;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream fields(line);
        std::string bits;
        std::string value;
        if (!(fields >> bits) || bits[0] == '#') continue;
        std::string extra;
        if (!(fields >> value) || (fields >> extra && extra[0] != '#'))
            throw std::invalid_argument("line " + std::to_string(lineno) + ": expected \"bits value\"");
        try {
            Bits x = Bits::parse(bits);
            if (!mass.emplace(x, Rat::parse(value)).second)
                throw std::invalid_argument("point " + bits + " listed twice");
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument("line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return mass;
}

std::map<Bits, Rat> read_mass_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open pmf file '" + path + "'");
    return read_mass(in);
}

Pmf read_pmf(const FrechetClass& cls, std::istream& in) { return validate_pmf(cls, read_mass(in)); }

Pmf read_pmf_file(const FrechetClass& cls, const std::string& path) { return validate_pmf(cls, read_mass_file(path)); }

void write_pmf(std::ostream& out, const Pmf& pmf) {
    for (const auto& [x, m] : pmf.support()) out << x.str() << ' ' << m << '\n';
}

std::string pmf_text(const Pmf& pmf) {
    std::ostringstream os;
    write_pmf(os, pmf);
    return os.str();
}

}  // namespace frechet
