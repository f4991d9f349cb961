// Client-side mirrors of the server's range checks; invalid values are
// blocked before any request is sent.

export type LikertScale = "eleven" | "five";

const RANGES: Record<LikertScale, [number, number]> = {
  eleven: [0, 10],
  five: [1, 5],
};

export function validateLikert(value: number, scale: LikertScale): string | null {
  const [lo, hi] = RANGES[scale];
  if (!Number.isInteger(value)) {
    return `Value must be a whole number between ${lo} and ${hi}.`;
  }
  if (value < lo || value > hi) {
    return `Value ${value} is out of range: use ${lo}–${hi}.`;
  }
  return null;
}

export function validateDays(value: number): string | null {
  if (!Number.isFinite(value) || value < 0) {
    return "Estimated days must be a non-negative number.";
  }
  return null;
}

export function validateMood(value: number): string | null {
  return validateLikert(value, "five");
}
