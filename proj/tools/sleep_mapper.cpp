// Stand-in mapper for the benchmark: sleeps LLMR_STUB_STARTUP seconds once per
// process start and LLMR_STUB_WORK seconds per file, then writes a one-line
// output for each file.
//
//   llmr-sleep-mapper <input> <output>    one file
//   llmr-sleep-mapper <manifest>          "<input> <output>" per line
//
// Kept free of iostreams so process start stays cheap.

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <ctime>

namespace {

double env_seconds(char const* name) {
    char const* v = std::getenv(name);
    return v ? std::strtod(v, nullptr) : 0.0;
}

void sleep_for(double s) {
    if (s <= 0) return;
    timespec ts;
    ts.tv_sec = static_cast<time_t>(s);
    ts.tv_nsec = static_cast<long>((s - static_cast<double>(ts.tv_sec)) * 1e9);
    while (nanosleep(&ts, &ts) != 0 && errno == EINTR) {
    }
}

bool process(char const* input, char const* output, double work) {
    sleep_for(work);
    std::FILE* f = std::fopen(output, "w");
    if (!f) {
        std::fprintf(stderr, "llmr-sleep-mapper: cannot write %s\n", output);
        return false;
    }
    std::fprintf(f, "processed %s\n", input);
    return std::fclose(f) == 0;
}

}  // namespace

int main(int argc, char** argv) {
    double const startup = env_seconds("LLMR_STUB_STARTUP");
    double const work = env_seconds("LLMR_STUB_WORK");

    if (argc == 3) {
        sleep_for(startup);
        return process(argv[1], argv[2], work) ? 0 : 1;
    }
    if (argc != 2) {
        std::fprintf(stderr, "usage: %s <input> <output> | %s <manifest>\n", argv[0], argv[0]);
        return 2;
    }

    std::FILE* manifest = std::fopen(argv[1], "r");
    if (!manifest) {
        std::fprintf(stderr, "llmr-sleep-mapper: cannot read %s\n", argv[1]);
        return 1;
    }
    sleep_for(startup);
    char in[4096];
    char out[4096];
    int rc = 0;
    while (std::fscanf(manifest, "%4095s %4095s", in, out) == 2)
        if (!process(in, out, work)) rc = 1;
    std::fclose(manifest);
    return rc;
}
