/**
 * Returns a wrapper that calls `fn` once `delayMs` milliseconds have
 * passed since the last invocation. Used to keep slider drags from
 * flooding the rankings endpoint.
 */
export function debounce<A extends unknown[]>(
  delayMs: number,
  fn: (...args: A) => void,
): (...args: A) => void {
  let timer: ReturnType<typeof setTimeout> | undefined;
  return (...args: A) => {
    if (timer !== undefined) {
      clearTimeout(timer);
    }
    timer = setTimeout(() => {
      timer = undefined;
      fn(...args);
    }, delayMs);
  };
}
