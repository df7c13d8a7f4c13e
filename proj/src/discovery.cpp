#include "llmr/discovery.hpp"

#include "llmr/error.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <unordered_set>

namespace llmr {

bool contains_whitespace(std::string_view s) noexcept {
    return std::any_of(s.begin(), s.end(),
                       [](unsigned char c) { return std::isspace(c) != 0; });
}

namespace {

bool is_hidden(fs::path const& p) {
    auto const name = p.filename().string();
    return !name.empty() && name.front() == '.';
}

void reject_whitespace(fs::path const& p) {
    if (contains_whitespace(p.string()))
        throw Error("path contains whitespace: '" + p.string() + "'");
}

std::string trim(std::string const& s) {
    auto const first = s.find_first_not_of(" \t\r\n\f\v");
    if (first == std::string::npos) return {};
    auto const last = s.find_last_not_of(" \t\r\n\f\v");
    return s.substr(first, last - first + 1);
}

std::vector<fs::path> scan_directory(fs::path const& root, fs::path const& resolved,
                                     bool subdir) {
    std::vector<fs::path> rel;
    std::error_code ec;
    if (subdir) {
        fs::recursive_directory_iterator it(resolved, ec), end;
        if (ec) throw Error("cannot read directory " + root.string() + ": " + ec.message());
        for (; it != end; it.increment(ec)) {
            if (ec) throw Error("cannot read directory " + root.string() + ": " + ec.message());
            if (is_hidden(it->path())) {
                if (it->is_directory()) it.disable_recursion_pending();
                continue;
            }
            if (it->is_regular_file()) rel.push_back(it->path().lexically_relative(resolved));
        }
    } else {
        fs::directory_iterator it(resolved, ec), end;
        if (ec) throw Error("cannot read directory " + root.string() + ": " + ec.message());
        for (; it != end; it.increment(ec)) {
            if (ec) throw Error("cannot read directory " + root.string() + ": " + ec.message());
            if (!is_hidden(it->path()) && it->is_regular_file())
                rel.push_back(it->path().filename());
        }
    }
    std::sort(rel.begin(), rel.end(), [](fs::path const& a, fs::path const& b) {
        return a.generic_string() < b.generic_string();
    });

    std::vector<fs::path> out;
    out.reserve(rel.size());
    for (auto const& r : rel) out.push_back(root / r);
    return out;
}

std::vector<fs::path> read_list_file(fs::path const& list, fs::path const& resolved,
                                     fs::path const& base) {
    std::ifstream in(resolved);
    if (!in) throw Error("cannot read list file " + list.string());
    std::vector<fs::path> out;
    std::string line;
    while (std::getline(in, line)) {
        auto entry = trim(line);
        if (entry.empty()) continue;
        fs::path p(entry);
        reject_whitespace(p);
        if (!fs::is_regular_file(resolve_against(base, p)))
            throw Error("listed input does not exist: " + entry);
        out.push_back(std::move(p));
    }
    return out;
}

}  // namespace

InputSource classify_input(fs::path const& path, fs::path const& base) {
    auto const resolved = resolve_against(base, path);
    if (fs::is_directory(resolved)) return {SourceKind::directory, path};
    if (fs::is_regular_file(resolved)) return {SourceKind::list_file, path};
    throw Error("input does not exist: " + path.string());
}

std::vector<fs::path> discover_inputs(InputSource const& source, bool subdir,
                                      fs::path const& base) {
    auto const resolved = resolve_against(base, source.path);
    auto paths = source.kind == SourceKind::directory
                     ? scan_directory(source.path, resolved, subdir)
                     : read_list_file(source.path, resolved, base);
    if (paths.empty()) throw Error("no input files found in " + source.path.string());
    for (auto const& p : paths) reject_whitespace(p);
    return paths;
}

fs::path map_output_path(fs::path const& input_path, fs::path const& input_root,
                         fs::path const& output_root, bool subdir,
                         std::string const& delimiter, std::string const& ext) {
    fs::path rel = input_path.filename();
    if (subdir) {
        auto r = input_path.lexically_relative(input_root);
        if (!r.empty() && *r.begin() != "..") rel = std::move(r);
    }
    rel += delimiter + ext;
    return output_root / rel;
}

std::vector<WorkItem> make_work_items(std::vector<fs::path> const& inputs,
                                      InputSource const& source, LaunchConfig const& config) {
    bool const from_list = source.kind == SourceKind::list_file;
    reject_whitespace(config.output);

    std::vector<WorkItem> items;
    items.reserve(inputs.size());
    std::unordered_set<std::string> seen;
    for (auto const& in : inputs) {
        auto out = map_output_path(in, source.path, config.output,
                                   config.subdir && !from_list, config.delimiter, config.ext);
        reject_whitespace(out);
        if (!seen.insert(out.lexically_normal().generic_string()).second)
            throw Error("two inputs map to the same output " + out.string());
        items.push_back({in, std::move(out)});
    }
    return items;
}

std::set<fs::path> mirror_output_tree(std::vector<WorkItem> const& items,
                                      fs::path const& output_root, fs::path const& base) {
    std::set<fs::path> wanted;
    wanted.insert(output_root);
    for (auto const& item : items) wanted.insert(item.output_path.parent_path());

    std::set<fs::path> created;
    for (auto const& dir : wanted) {
        if (dir.empty()) continue;
        auto const resolved = resolve_against(base, dir);
        if (fs::is_directory(resolved)) continue;
        std::error_code ec;
        fs::create_directories(resolved, ec);
        // A concurrent launch may have created it between the check and here.
        if (ec && !fs::is_directory(resolved))
            throw Error("cannot create output directory " + dir.string() + ": " + ec.message());
        created.insert(dir);
    }
    return created;
}

}  // namespace llmr
