#pragma once

#include <stdexcept>
#include <string>

namespace lbl2vec {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parameter or argument is outside its documented range.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Input data is malformed, truncated, or otherwise unusable.
class DataError : public Error {
 public:
  using Error::Error;
};

/// A word was looked up that is not part of the trained vocabulary.
class OovError : public DataError {
 public:
  explicit OovError(std::string word)
      : DataError("out-of-vocabulary word: " + word), word_(std::move(word)) {}

  const std::string& word() const noexcept { return word_; }

 private:
  std::string word_;
};

}  // namespace lbl2vec
