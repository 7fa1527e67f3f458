/** Transient notifications, mostly for service-side rejections. */

export function showToast(host: HTMLElement, message: string, ttlMs = 4000): HTMLElement {
  let stack = host.querySelector<HTMLElement>(".toast-stack");
  if (!stack) {
    stack = document.createElement("div");
    stack.className = "toast-stack";
    host.appendChild(stack);
  }
  const toast = document.createElement("div");
  toast.className = "toast";
  toast.textContent = message;
  stack.appendChild(toast);
  setTimeout(() => toast.remove(), ttlMs);
  return toast;
}
