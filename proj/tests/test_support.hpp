#pragma once

// Helpers shared by the unit and acceptance suites.

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#ifndef LLMR_FIXTURE_DIR
#error "LLMR_FIXTURE_DIR must be defined"
#endif
#ifndef LLMR_GOLDEN_DIR
#error "LLMR_GOLDEN_DIR must be defined"
#endif
#ifndef LLMR_SLEEP_MAPPER
#error "LLMR_SLEEP_MAPPER must be defined"
#endif

namespace llmr::test {

namespace fs = std::filesystem;

inline fs::path fixture(std::string const& name) { return fs::path(LLMR_FIXTURE_DIR) / name; }
inline fs::path golden(std::string const& name) { return fs::path(LLMR_GOLDEN_DIR) / name; }
inline fs::path sleep_mapper() { return LLMR_SLEEP_MAPPER; }

/// Scratch directory removed on destruction.
class TempDir {
public:
    TempDir() {
        std::string tmpl = (fs::temp_directory_path() / "llmr-test-XXXXXX").string();
        if (!::mkdtemp(tmpl.data())) throw std::runtime_error("mkdtemp failed");
        path_ = tmpl;
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path_, ec);
    }
    TempDir(TempDir const&) = delete;
    TempDir& operator=(TempDir const&) = delete;

    fs::path const& path() const { return path_; }
    fs::path operator/(fs::path const& rel) const { return path_ / rel; }

private:
    fs::path path_;
};

inline void write_file(fs::path const& p, std::string const& text) {
    fs::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary);
    out << text;
    if (!out) throw std::runtime_error("cannot write " + p.string());
}

inline std::string read_file(fs::path const& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + p.string());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

inline std::vector<std::string> read_lines(fs::path const& p) {
    std::vector<std::string> lines;
    std::ifstream in(p);
    for (std::string line; std::getline(in, line);) lines.push_back(line);
    return lines;
}

/// Golden file with every `@KEY@` replaced.
inline std::string render_golden(std::string const& name,
                                 std::map<std::string, std::string> const& values) {
    auto text = read_file(golden(name));
    for (auto const& [key, value] : values) {
        auto const token = "@" + key + "@";
        for (auto pos = text.find(token); pos != std::string::npos;
             pos = text.find(token, pos + value.size()))
            text.replace(pos, token.size(), value);
    }
    return text;
}

/// Relative path -> content for every regular file under `root`.
inline std::map<std::string, std::string> snapshot_tree(fs::path const& root) {
    std::map<std::string, std::string> out;
    for (auto const& e : fs::recursive_directory_iterator(root))
        if (e.is_regular_file())
            out[e.path().lexically_relative(root).generic_string()] = read_file(e.path());
    return out;
}

/// Write `count` text files of random lowercase words into `dir`.
inline void make_text_corpus(fs::path const& dir, std::size_t count, unsigned seed) {
    std::mt19937 rng(seed);
    static char const* const vocab[] = {"map",    "reduce", "array", "task",  "job",
                                        "input",  "output", "node",  "block", "cyclic",
                                        "matlab", "java",   "lustre", "file", "word"};
    std::uniform_int_distribution<std::size_t> pick(0, std::size(vocab) - 1);
    std::uniform_int_distribution<int> words(5, 40);
    for (std::size_t i = 1; i <= count; ++i) {
        std::ostringstream text;
        int const n = words(rng);
        for (int w = 0; w < n; ++w) text << vocab[pick(rng)] << (w % 7 == 6 ? '\n' : ' ');
        text << '\n';
        char name[32];
        std::snprintf(name, sizeof name, "text_%02zu.txt", i);
        write_file(dir / name, text.str());
    }
}

/// Sequential single-process word count over every file in `dir`, as
/// sorted "word count" lines.
inline std::vector<std::string> word_count_oracle(fs::path const& dir) {
    std::map<std::string, long> counts;
    for (auto const& e : fs::directory_iterator(dir)) {
        std::ifstream in(e.path());
        for (std::string w; in >> w;) ++counts[w];
    }
    std::vector<std::string> lines;
    for (auto const& [w, c] : counts) lines.push_back(w + " " + std::to_string(c));
    std::sort(lines.begin(), lines.end());
    return lines;
}

inline std::vector<std::string> sorted_lines(fs::path const& p) {
    auto lines = read_lines(p);
    std::sort(lines.begin(), lines.end());
    return lines;
}

struct LedgerEntry {
    std::string kind;
    long long ns{};
};

inline std::vector<LedgerEntry> read_ledger(fs::path const& p) {
    std::vector<LedgerEntry> out;
    std::ifstream in(p);
    for (std::string kind; in >> kind;) {
        LedgerEntry e{kind, 0};
        long long pid = 0;
        in >> e.ns >> pid;
        out.push_back(e);
    }
    return out;
}

}  // namespace llmr::test
