#include <rejsched/core/error.hpp>
#include <rejsched/harness/trace_file.hpp>

#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>
#include <vector>

namespace rejsched {

namespace {

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = s.find(sep, start);
        out.push_back(s.substr(start, pos - start));
        if (pos == std::string_view::npos) {
            return out;
        }
        start = pos + 1;
    }
}

std::vector<std::string_view> tokens(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) {
            ++i;
        }
        const std::size_t start = i;
        while (i < s.size() && s[i] != ' ' && s[i] != '\t' && s[i] != '\r') {
            ++i;
        }
        if (i > start) {
            out.push_back(s.substr(start, i - start));
        }
    }
    return out;
}

template <typename Int>
bool parse_int(std::string_view s, Int& out) {
    if (s.empty() || s.front() == '+') {
        return false;
    }
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && ptr == s.data() + s.size();
}

[[noreturn]] void malformed(std::size_t line, const std::string& what) {
    throw Error(ErrorCode::MalformedLine, what, line);
}

bool blank_or_comment(std::string_view line) {
    const auto first = line.find_first_not_of(" \t\r");
    return first == std::string_view::npos || line[first] == '#';
}

void parse_header(std::string_view line, std::size_t number, TraceFile& out) {
    std::map<std::string, std::string_view, std::less<>> fields;
    for (std::string_view tok : tokens(line)) {
        const auto eq = tok.find('=');
        if (eq == std::string_view::npos) {
            throw Error(ErrorCode::MissingHeader, "expected key=value header, got '" + std::string(line) + "'",
                        number);
        }
        if (!fields.emplace(std::string(tok.substr(0, eq)), tok.substr(eq + 1)).second) {
            malformed(number, "repeated header key '" + std::string(tok.substr(0, eq)) + "'");
        }
    }
    for (const char* key : {"m", "epsilon"}) {
        if (!fields.contains(key)) {
            throw Error(ErrorCode::MissingHeader, std::string("header lacks '") + key + "'", number);
        }
    }
    for (const auto& [key, value] : fields) {
        try {
            if (key == "m") {
                if (!parse_int(value, out.instance.machines)) {
                    malformed(number, "bad machine count '" + std::string(value) + "'");
                }
            } else if (key == "epsilon") {
                out.instance.epsilon = Rational::parse(value);
            } else if (key == "speedup") {
                out.instance.speedup = Rational::parse(value);
            } else if (key == "seed") {
                if (!parse_int(value, out.seed)) {
                    malformed(number, "bad seed '" + std::string(value) + "'");
                }
            } else {
                malformed(number, "unknown header key '" + key + "'");
            }
        } catch (const std::invalid_argument& e) {
            malformed(number, e.what());
        }
    }
}

Job parse_job(std::string_view line, std::size_t number) {
    const auto tok = tokens(line);
    if (tok.size() != 4) {
        malformed(number, "expected 4 fields, got " + std::to_string(tok.size()));
    }
    Job job;
    if (!parse_int(tok[0], job.id)) {
        malformed(number, "bad id '" + std::string(tok[0]) + "'");
    }
    if (!parse_int(tok[1], job.release)) {
        malformed(number, "bad release '" + std::string(tok[1]) + "'");
    }
    try {
        job.weight = Rational::parse(tok[2]);
    } catch (const std::invalid_argument& e) {
        malformed(number, e.what());
    }
    for (std::string_view s : split(tok[3], ',')) {
        if (s == "-") {
            job.sizes.emplace_back(std::nullopt);
            continue;
        }
        std::int64_t size = 0;
        if (!parse_int(s, size)) {
            malformed(number, "bad size '" + std::string(s) + "'");
        }
        job.sizes.emplace_back(size);
    }
    return job;
}

}  // namespace

TraceFile parse_trace(std::istream& in) {
    TraceFile out;
    bool have_header = false;
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
        ++number;
        if (blank_or_comment(line)) {
            continue;
        }
        if (!have_header) {
            parse_header(line, number, out);
            have_header = true;
        } else {
            out.instance.jobs.push_back(parse_job(line, number));
        }
    }
    if (in.bad()) {
        throw Error(ErrorCode::IOFailure, "read failed");
    }
    if (!have_header) {
        throw Error(ErrorCode::MissingHeader, "no header line");
    }
    return out;
}

TraceFile parse_trace(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::IOFailure, "cannot open " + path.string());
    }
    return parse_trace(in);
}

void serialize_trace(const TraceFile& file, std::ostream& out) {
    const Instance& inst = file.instance;
    out << "m=" << inst.machines << " epsilon=" << inst.epsilon << " speedup=" << inst.speedup
        << " seed=" << file.seed << '\n';
    for (const Job& job : inst.jobs) {
        out << job.id << ' ' << job.release << ' ' << job.weight << ' ';
        for (std::size_t i = 0; i < job.sizes.size(); ++i) {
            if (i > 0) {
                out << ',';
            }
            if (job.sizes[i]) {
                out << *job.sizes[i];
            } else {
                out << '-';
            }
        }
        out << '\n';
    }
}

void serialize_trace(const TraceFile& file, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) {
        throw Error(ErrorCode::IOFailure, "cannot write " + path.string());
    }
    serialize_trace(file, out);
    out.flush();
    if (!out) {
        throw Error(ErrorCode::IOFailure, "write failed for " + path.string());
    }
}

std::string serialize_trace(const TraceFile& file) {
    std::ostringstream out;
    serialize_trace(file, out);
    return out.str();
}

}  // namespace rejsched
