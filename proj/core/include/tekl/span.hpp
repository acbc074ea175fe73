#ifndef TEKL_SPAN_HPP
#define TEKL_SPAN_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tekl {

struct SourceSpan {
  std::size_t line = 1;
  std::size_t column = 1;
  std::size_t offset = 0;
  std::size_t length = 0;

  std::string to_string() const {
    return std::to_string(line) + ":" + std::to_string(column);
  }
};

class ParseError : public std::runtime_error {
 public:
  ParseError(SourceSpan span, const std::string& message)
      : std::runtime_error(span.to_string() + ": " + message), span_(span), message_(message) {}

  const SourceSpan& span() const { return span_; }
  const std::string& message() const { return message_; }

 private:
  SourceSpan span_;
  std::string message_;
};

}  // namespace tekl

#endif
