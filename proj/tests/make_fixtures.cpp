// Writes the audio and trace files used by the C API, CLI and acceptance
// tests into the directory given on the command line.
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "choreo/audio.hpp"
#include "support/fixtures.hpp"

namespace {

void save(const std::filesystem::path& path, const choreo::AudioBuffer& audio) {
  choreo::write_wav(path, audio.samples, 1, audio.sample_rate, choreo::WavEncoding::Int16);
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::fprintf(stderr, "usage: make_fixtures <dir>\n");
    return 1;
  }
  std::filesystem::path dir = argv[1];
  std::filesystem::create_directories(dir);
  save(dir / "click80.wav", fixtures::click_track(60.0 / 80.0, 10.0));
  save(dir / "click120.wav", fixtures::click_track(0.5, 10.0));
  save(dir / "click160.wav", fixtures::click_track(60.0 / 160.0, 10.0));
  save(dir / "clip.wav", fixtures::repeated_clip());
  save(dir / "tone.wav", fixtures::sine(440.0, 1.0, 22050));
  fixtures::write_text(dir / "junk.wav", "this is not a wave file\n");
  fixtures::write_text(dir / "three_step.json", R"({
  "schema_version": 1,
  "params": {"K": 5, "N": 3, "start_state": 2, "representation": "action", "approach": "hand"},
  "actions": ["U", "U", "D"],
  "states": [3, 4, 3],
  "score": null
}
)");
  return 0;
}
