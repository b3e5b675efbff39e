#ifndef SFG_CORPUS_HPP
#define SFG_CORPUS_HPP

#include <string>
#include <vector>

namespace sfg::corpus {

struct CorpusFile {
    const char* name;
    const char* contents;
};

// The bundled example files: every code, section and graph used by
// the test suite and the `examples` subcommand.
const std::vector<CorpusFile>& files();

// Contents by file name; throws std::invalid_argument when missing.
std::string file(const std::string& name);

} // namespace sfg::corpus

#endif
